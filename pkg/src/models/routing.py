"""Pydantic models for local routing."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.models.geometry import Point2D


class RoutingStrategy(str, Enum):
    DESTROYER_OF_TARGET = "destroyer"
    NEAREST_TO_TARGET = "nearest"
    # farthest neighbor whose region holds the destination, no length cap
    FARTHEST_DESTROYER = "farthest"

    @property
    def guarantees_delivery(self) -> bool:
        """Strict progress toward the destination on every GLT graph."""
        return self is not RoutingStrategy.FARTHEST_DESTROYER


class RoutingOutcome(str, Enum):
    DELIVERED = "delivered"
    FAILED_NO_MOVE = "failed_no_move"
    FAILED_HOP_LIMIT = "failed_hop_limit"


class NeighborInfo(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int
    position: Point2D
    length: float


class LocalView(BaseModel):
    """Everything a routing step may look at: the current vertex, its
    out-neighbors and the destination."""

    model_config = ConfigDict(frozen=True)

    current: int
    position: Point2D
    neighbors: tuple[NeighborInfo, ...]
    dest: int
    dest_position: Point2D


class RoutingTrace(BaseModel):
    vertex_sequence: list[int] = Field(default_factory=list)
    total_length: float = 0.0
    outcome: RoutingOutcome = RoutingOutcome.DELIVERED

    @property
    def hop_count(self) -> int:
        return max(0, len(self.vertex_sequence) - 1)

    @property
    def delivered(self) -> bool:
        return self.outcome == RoutingOutcome.DELIVERED

    def format_line(self) -> str:
        """``i j k ... : length`` as printed by the CLI."""
        return " ".join(str(v) for v in self.vertex_sequence) + f" : {self.total_length!r}"
