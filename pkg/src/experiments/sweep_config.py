"""Flat key/value sweep configuration files.

    # comment
    lambda     = 0.5, 0.75, 1
    theta      = 5:90:5          # inclusive start:stop:step
    instances  = 200
    points     = 200
    seed       = 20070301
    strategies = destroyer, nearest
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.models.sweep import SweepConfig

_KEYS = {
    "lambda": "lambda_values",
    "lambdas": "lambda_values",
    "lambda_values": "lambda_values",
    "theta": "theta_values_degrees",
    "theta_deg": "theta_values_degrees",
    "theta_values_degrees": "theta_values_degrees",
    "instances": "instances",
    "points": "points_per_instance",
    "points_per_instance": "points_per_instance",
    "seed": "seed",
    "strategies": "strategies",
    "abort_on_violation": "abort_on_violation",
}


class SweepConfigError(ValueError):
    """Raised for malformed sweep configuration files."""


def parse_number_list(text: str) -> list[float]:
    """``a, b, c`` or an inclusive range ``start:stop:step``."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise SweepConfigError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(x) for x in parts)
        if step <= 0:
            raise SweepConfigError(f"range step must be positive, got {step}")
        values = []
        k = 0
        while start + k * step <= stop + step * 1e-9:
            values.append(round(start + k * step, 10))
            k += 1
        return values
    return [float(tok) for tok in text.split(",") if tok.strip()]


def parse_sweep_config_text(text: str) -> SweepConfig:
    raw: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SweepConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        field = _KEYS.get(key.lower())
        if field is None:
            raise SweepConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            if field in ("lambda_values", "theta_values_degrees"):
                raw[field] = parse_number_list(value)
            elif field == "strategies":
                raw[field] = [tok.strip() for tok in value.split(",") if tok.strip()]
            elif field == "abort_on_violation":
                raw[field] = value.lower() in ("1", "true", "yes", "on")
            else:
                raw[field] = int(value)
        except ValueError as exc:
            if isinstance(exc, SweepConfigError):
                raise
            raise SweepConfigError(f"line {lineno}: invalid value {value!r}") from exc

    missing = {"lambda_values", "theta_values_degrees", "instances", "points_per_instance",
               "seed"} - raw.keys()
    if missing:
        raise SweepConfigError(f"missing keys: {', '.join(sorted(missing))}")
    try:
        return SweepConfig(**raw)
    except ValidationError as exc:
        raise SweepConfigError(str(exc)) from exc


def parse_sweep_config(path: str | Path) -> SweepConfig:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Sweep config not found: {path}")
    return parse_sweep_config_text(path.read_text(encoding="utf-8"))


def format_sweep_config(config: SweepConfig) -> str:
    def nums(values: list[float]) -> str:
        return ", ".join(format(v, "g") for v in values)

    return (
        f"lambda = {nums(config.lambda_values)}\n"
        f"theta = {nums(config.theta_values_degrees)}\n"
        f"instances = {config.instances}\n"
        f"points = {config.points_per_instance}\n"
        f"seed = {config.seed}\n"
        f"strategies = {', '.join(s.value for s in config.strategies)}\n"
        f"abort_on_violation = {str(config.abort_on_violation).lower()}\n"
    )
