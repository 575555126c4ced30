"""Reference tables and comparison of sweep results against them.

Two reference layouts are accepted:

* wide: a ``# metric: <column>`` line, then a header ``theta_deg,<λ>,<λ>,...``
  and one row per θ. Blank cells mean "no value".
* long: a sweep CSV as written by :mod:`src.reporting.csv_reporter`; every mean
  column present in both the reference and the results is compared.

Table values are means over instances of the per-instance maximum ratio.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import NamedTuple

from src.logger import get_logger
from src.models.sweep import MEAN_COLUMNS, CellDifference, ComparisonReport, SweepResult
from src.reporting.csv_reporter import is_sweep_csv_header, parse_sweep_csv

logger = get_logger(__name__)

CellKey = tuple[float, float]
_WORST_CELLS = 5
_KEY_DIGITS = 6


class GridMismatchError(ValueError):
    """Raised when results and reference do not cover the same (λ, θ) cells."""


class ReferenceTable(NamedTuple):
    columns: dict[str, dict[CellKey, float]]
    grid: frozenset[CellKey]
    source: str = ""


def cell_key(lam: float, theta_degrees: float) -> CellKey:
    return (round(lam, _KEY_DIGITS), round(theta_degrees, _KEY_DIGITS))


def _parse_wide(lines: list[str], source: str) -> ReferenceTable:
    metric = lines[0].split(":", 1)[1].strip()
    if metric not in MEAN_COLUMNS:
        raise GridMismatchError(f"{source}: unknown metric {metric!r}")
    rows = list(csv.reader(lines[1:]))
    if not rows or not rows[0] or rows[0][0].strip() != "theta_deg":
        raise GridMismatchError(f"{source}: wide table must start with a theta_deg header")
    lambdas = [float(tok) for tok in rows[0][1:]]
    values: dict[CellKey, float] = {}
    grid: set[CellKey] = set()
    for row in rows[1:]:
        if not row:
            continue
        theta = float(row[0])
        grid.update(cell_key(lam, theta) for lam in lambdas)
        if len(row) - 1 > len(lambdas):
            raise GridMismatchError(f"{source}: row θ={row[0]} has too many cells")
        for lam, cell in zip(lambdas, row[1:]):
            if cell.strip():
                values[cell_key(lam, theta)] = float(cell)
    return ReferenceTable(columns={metric: values}, grid=frozenset(grid), source=source)


def _parse_long(text: str, source: str) -> ReferenceTable:
    columns: dict[str, dict[CellKey, float]] = {c: {} for c in MEAN_COLUMNS}
    grid: set[CellKey] = set()
    for result in parse_sweep_csv(text):
        grid.add(cell_key(result.lam, result.theta_degrees))
        for column in MEAN_COLUMNS:
            value = result.metric(column)
            if value is not None:
                columns[column][cell_key(result.lam, result.theta_degrees)] = value
    return ReferenceTable(
        columns={c: v for c, v in columns.items() if v}, grid=frozenset(grid), source=source
    )


def parse_reference(text: str, source: str = "<string>") -> ReferenceTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GridMismatchError(f"{source}: empty reference table")
    if lines[0].lstrip().startswith("# metric:"):
        return _parse_wide(lines, source)
    first_data = next((ln for ln in lines if not ln.lstrip().startswith("#")), "")
    if is_sweep_csv_header(first_data.split(",")):
        return _parse_long(text, source)
    raise GridMismatchError(f"{source}: neither a '# metric:' table nor a sweep CSV")


def load_reference(path: str | Path) -> ReferenceTable:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Reference table not found: {path}")
    return parse_reference(path.read_text(encoding="utf-8"), source=str(path))


def _difference(value: float, reference: float) -> float:
    if math.isinf(value) and math.isinf(reference) and value == reference:
        return 0.0
    return abs(value - reference)


def compare_to_reference(
    results: list[SweepResult],
    reference: ReferenceTable | str | Path,
    tolerance: float,
    metric: str | None = None,
) -> ComparisonReport:
    """Per-cell absolute difference of means; passes iff every difference is
    within ``tolerance``. Every result cell must exist in the reference grid."""
    if tolerance < 0:
        raise ValueError(f"tolerance must be non-negative, got {tolerance}")
    table = reference if isinstance(reference, ReferenceTable) else load_reference(reference)

    if metric is not None:
        if metric not in table.columns:
            raise GridMismatchError(f"reference has no {metric!r} column")
        columns = [metric]
    else:
        columns = [c for c in MEAN_COLUMNS if c in table.columns]
    if not columns:
        raise GridMismatchError("reference table holds no mean column")

    diffs: list[CellDifference] = []
    for column in columns:
        values = table.columns[column]
        present = [r for r in results if r.metric(column) is not None]
        if not present:
            if metric is not None or len(table.columns) == 1:
                raise GridMismatchError(f"results carry no {column!r} values")
            continue
        for r in present:
            key = cell_key(r.lam, r.theta_degrees)
            if key not in table.grid:
                raise GridMismatchError(
                    f"cell λ={r.lam:g} θ={r.theta_degrees:g}° is not in the reference grid"
                )
            if key not in values:
                continue
            value = r.metric(column)
            assert value is not None
            diffs.append(
                CellDifference(
                    lam=r.lam,
                    theta_degrees=r.theta_degrees,
                    metric=column,
                    value=value,
                    reference=values[key],
                )
            )

    diffs.sort(key=lambda d: _difference(d.value, d.reference), reverse=True)
    max_diff = _difference(diffs[0].value, diffs[0].reference) if diffs else 0.0
    report = ComparisonReport(
        passed=all(_difference(d.value, d.reference) <= tolerance for d in diffs),
        tolerance=tolerance,
        cells_compared=len(diffs),
        max_difference=max_diff,
        worst_cells=diffs[:_WORST_CELLS],
    )
    logger.info(
        "Reference comparison",
        source=table.source,
        columns=columns,
        cells=report.cells_compared,
        max_difference=report.max_difference,
        passed=report.passed,
    )
    return report
