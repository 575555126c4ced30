"""Sweep CSV writer/reader: one row per (λ, θ) cell, rows in (θ, λ) order."""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from pathlib import Path

from src.config import get_settings
from src.logger import get_logger
from src.models.routing import RoutingStrategy
from src.models.sweep import SweepResult

logger = get_logger(__name__)

SWEEP_CSV_HEADER = (
    "lambda",
    "theta_deg",
    "mean_spanning",
    "ci95_spanning",
    "mean_routing_destroyer",
    "ci95_routing_destroyer",
    "mean_routing_nearest",
    "ci95_routing_nearest",
    "max_out_degree",
    "failures",
    "mean_routing_farthest",
    "ci95_routing_farthest",
)
# ten-column layout without the farthest-destroyer columns, still accepted on read
BASE_SWEEP_CSV_HEADER = SWEEP_CSV_HEADER[:10]

_STRATEGY_COLUMNS = {
    RoutingStrategy.DESTROYER_OF_TARGET: ("mean_routing_destroyer", "ci95_routing_destroyer"),
    RoutingStrategy.NEAREST_TO_TARGET: ("mean_routing_nearest", "ci95_routing_nearest"),
    RoutingStrategy.FARTHEST_DESTROYER: ("mean_routing_farthest", "ci95_routing_farthest"),
}


class SweepCsvError(ValueError):
    """Raised when a sweep CSV cannot be parsed."""


def _fmt(value: float | None, digits: int) -> str:
    if value is None:
        return ""
    return f"{value:.{digits}f}"


def format_sweep_csv(results: list[SweepResult], digits: int | None = None) -> str:
    """Render results as CSV text. Byte-identical for identical results."""
    digits = get_settings().csv_float_digits if digits is None else digits
    ordered = sorted(results, key=lambda r: (r.theta_degrees, r.lam))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for r in ordered:
        cells = {
            "lambda": format(r.lam, "g"),
            "theta_deg": format(r.theta_degrees, "g"),
            "mean_spanning": _fmt(r.mean_spanning_ratio, digits),
            "ci95_spanning": _fmt(r.ci95_spanning, digits),
            "max_out_degree": str(r.max_out_degree_observed),
            "failures": str(r.failures),
        }
        for strategy, (mean_col, ci_col) in _STRATEGY_COLUMNS.items():
            cells[mean_col] = _fmt(r.mean_routing_ratio.get(strategy), digits)
            cells[ci_col] = _fmt(r.ci95_routing.get(strategy), digits)
        writer.writerow([cells[column] for column in SWEEP_CSV_HEADER])
    return buf.getvalue()


def write_sweep_csv(results: list[SweepResult], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_sweep_csv(results), encoding="utf-8")
    logger.info("Sweep CSV saved", path=str(path), cells=len(results))
    return path


def _opt(value: str) -> float | None:
    value = value.strip()
    return float(value) if value else None


def is_sweep_csv_header(fields: Sequence[str] | None) -> bool:
    return fields is not None and tuple(fields) in (SWEEP_CSV_HEADER, BASE_SWEEP_CSV_HEADER)


def parse_sweep_csv(text: str) -> list[SweepResult]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    if not is_sweep_csv_header(reader.fieldnames):
        raise SweepCsvError(f"unexpected sweep CSV header: {reader.fieldnames}")
    results: list[SweepResult] = []
    for lineno, row in enumerate(reader, start=2):
        try:
            means: dict[RoutingStrategy, float] = {}
            cis: dict[RoutingStrategy, float] = {}
            for strategy, (mean_col, ci_col) in _STRATEGY_COLUMNS.items():
                mean = _opt(row.get(mean_col, ""))
                if mean is not None:
                    means[strategy] = mean
                    cis[strategy] = _opt(row.get(ci_col, "")) or 0.0
            spanning = _opt(row["mean_spanning"])
            if spanning is None:
                raise ValueError("mean_spanning is empty")
            results.append(
                SweepResult(
                    lam=float(row["lambda"]),
                    theta_degrees=float(row["theta_deg"]),
                    mean_spanning_ratio=spanning,
                    ci95_spanning=_opt(row["ci95_spanning"]) or 0.0,
                    mean_routing_ratio=means,
                    ci95_routing=cis,
                    max_out_degree_observed=int(row["max_out_degree"]),
                    failures=int(row["failures"]),
                )
            )
        except (TypeError, ValueError) as exc:
            raise SweepCsvError(f"row {lineno}: {exc}") from exc
    return results


def read_sweep_csv(path: str | Path) -> list[SweepResult]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Sweep CSV not found: {path}")
    return parse_sweep_csv(path.read_text(encoding="utf-8"))
