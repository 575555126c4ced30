"""Pydantic models for planar points and spanner parameters."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field


class Point2D(BaseModel):
    """A planar point with finite real coordinates."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    x: float
    y: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)

    @classmethod
    def of(cls, x: float, y: float) -> Point2D:
        return cls(x=x, y=y)


class SpannerParams(BaseModel):
    """The (λ, θ) pair governing destruction regions.

    The closed range 1/2 ≤ λ ≤ 1, 0 ≤ θ ≤ π/2 is admitted so the boundary
    column and row of the reference tables can be built. The stretch bound
    only holds where ``has_stretch_guarantee`` is true.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, allow_inf_nan=False)

    lam: float = Field(alias="lambda", ge=0.5, le=1.0)
    theta: float = Field(ge=0.0, le=math.pi / 2)

    @classmethod
    def from_degrees(cls, lam: float, theta_deg: float) -> SpannerParams:
        return cls(lam=lam, theta=math.radians(theta_deg))

    @property
    def theta_degrees(self) -> float:
        return math.degrees(self.theta)

    @property
    def has_stretch_guarantee(self) -> bool:
        return 0.5 < self.lam < 1.0 and self.theta < math.pi / 2

    @property
    def stretch_bound(self) -> float:
        """t = 1/((1−λ)·cos θ); +∞ when λ = 1 or θ = π/2."""
        denom = (1.0 - self.lam) * math.cos(self.theta)
        if self.lam >= 1.0 or self.theta >= math.pi / 2 or denom <= 0.0:
            return math.inf
        return 1.0 / denom

    @property
    def out_degree_bound(self) -> int | None:
        """⌊2π / min(θ, arccos(1/(2λ)))⌋, or None when the minimum angle is 0."""
        # libm rounds arccos(1/2) above π/3, which would floor 2π/α to 5
        alpha = math.pi / 3 if self.lam == 1.0 else math.acos(min(1.0, 1.0 / (2.0 * self.lam)))
        min_angle = min(self.theta, alpha)
        if min_angle <= 0.0:
            return None
        return math.floor(2.0 * math.pi / min_angle)
