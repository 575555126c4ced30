"""Pydantic models for parameter sweeps and reference comparison."""

from __future__ import annotations

import math
from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator

from src.models.geometry import SpannerParams
from src.models.routing import RoutingStrategy


class SweepConfig(BaseModel):
    """One experiment grid: every (λ, θ) cell runs on the same point sets."""

    lambda_values: list[float] = Field(min_length=1)
    theta_values_degrees: list[float] = Field(min_length=1)
    instances: int = Field(ge=1)
    points_per_instance: int = Field(ge=2)
    seed: int = Field(ge=0, lt=2**64)
    strategies: list[RoutingStrategy] = Field(
        default_factory=lambda: [
            RoutingStrategy.DESTROYER_OF_TARGET,
            RoutingStrategy.NEAREST_TO_TARGET,
        ]
    )
    abort_on_violation: bool = True

    @field_validator("strategies")
    @classmethod
    def _unique_strategies(cls, v: list[RoutingStrategy]) -> list[RoutingStrategy]:
        return list(dict.fromkeys(v))

    @model_validator(mode="after")
    def _check_cells(self) -> SweepConfig:
        for lam in self.lambda_values:
            for theta in self.theta_values_degrees:
                SpannerParams.from_degrees(lam, theta)
        return self

    def cells(self) -> list[SpannerParams]:
        """Cells ordered by (θ, λ), the CSV row order."""
        return [
            SpannerParams.from_degrees(lam, theta)
            for theta in sorted(self.theta_values_degrees)
            for lam in sorted(self.lambda_values)
        ]

    def cell_keys(self) -> list[tuple[float, float]]:
        return [
            (lam, theta)
            for theta in sorted(self.theta_values_degrees)
            for lam in sorted(self.lambda_values)
        ]


class SweepResult(BaseModel):
    """Aggregates of one (λ, θ) cell over all instances."""

    lam: float
    theta_degrees: float
    mean_spanning_ratio: float
    ci95_spanning: float = 0.0
    mean_routing_ratio: dict[RoutingStrategy, float] = Field(default_factory=dict)
    ci95_routing: dict[RoutingStrategy, float] = Field(default_factory=dict)
    max_out_degree_observed: int = 0
    failures: int = 0

    @property
    def key(self) -> tuple[float, float]:
        return (self.lam, self.theta_degrees)

    def metric(self, column: str) -> float | None:
        """Value of a CSV mean column, None when absent."""
        match column:
            case "mean_spanning":
                return self.mean_spanning_ratio
            case "mean_routing_destroyer":
                return self.mean_routing_ratio.get(RoutingStrategy.DESTROYER_OF_TARGET)
            case "mean_routing_nearest":
                return self.mean_routing_ratio.get(RoutingStrategy.NEAREST_TO_TARGET)
            case "mean_routing_farthest":
                return self.mean_routing_ratio.get(RoutingStrategy.FARTHEST_DESTROYER)
            case _:
                raise KeyError(column)


MEAN_COLUMNS = (
    "mean_spanning",
    "mean_routing_destroyer",
    "mean_routing_nearest",
    "mean_routing_farthest",
)


class CellDifference(BaseModel):
    lam: float
    theta_degrees: float
    metric: str
    value: float
    reference: float

    @property
    def difference(self) -> float:
        return abs(self.value - self.reference)


class ComparisonReport(BaseModel):
    passed: bool
    tolerance: float
    cells_compared: int = 0
    max_difference: float = 0.0
    worst_cells: list[CellDifference] = Field(default_factory=list)


class SweepStage(str, Enum):
    PENDING = "pending"
    GENERATING = "generating"
    EVALUATING = "evaluating"
    AGGREGATING = "aggregating"
    REPORTING = "reporting"
    COMPLETED = "completed"
    FAILED = "failed"


class SweepState(BaseModel):
    """Tracks sweep execution state."""

    stage: SweepStage = SweepStage.PENDING
    progress: float = 0.0  # 0–100
    instances_done: int = 0
    instances_total: int = 0
    errors: list[str] = Field(default_factory=list)
    stage_times: dict[str, float] = Field(default_factory=dict)
    csv_path: str | None = None


def ci95_half_width(values: list[float]) -> float:
    """1.96 · sample stddev / √n (0 for fewer than two values)."""
    n = len(values)
    if n < 2:
        return 0.0
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return 1.96 * math.sqrt(var) / math.sqrt(n)


class SweepSummary(BaseModel):
    """JSON summary of one sweep run."""

    config: SweepConfig
    results: list[SweepResult]
    state: SweepState
    run_id: str | None = None
