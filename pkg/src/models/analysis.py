"""Pydantic models for stretch and strong-spanner reports."""

from __future__ import annotations

import math

from pydantic import BaseModel, Field


class StretchReport(BaseModel):
    """Maximum path-length ratio over ordered vertex pairs.

    ``ratio`` is taken over the pairs that are reachable; when some pair is
    not, ``all_reachable`` is false and ``first_unreachable`` names it.
    """

    ratio: float = 1.0
    witness_pair: tuple[int, int] | None = None
    all_reachable: bool = True
    unreachable_pairs: int = 0
    first_unreachable: tuple[int, int] | None = None

    @property
    def is_defined(self) -> bool:
        return self.all_reachable and math.isfinite(self.ratio)


class StrongSpannerCertificate(BaseModel):
    holds: bool
    t_used: float
    failing_pair: tuple[int, int] | None = None
    failing_length: float | None = None  # capped path length, inf when unreachable


class ThresholdCheck(BaseModel):
    """Result of checking a property at every length threshold of a ladder."""

    holds: bool
    t_used: float
    thresholds_checked: int = 0
    worst_ratio: float = 1.0
    failing_threshold: float | None = None
    failing_pair: tuple[int, int] | None = None
    ratios: list[float] = Field(default_factory=list)
