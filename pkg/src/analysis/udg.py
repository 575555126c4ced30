"""Unit-disk-graph reduction: strong spanners stay spanners under every
length truncation, and only strong spanners do."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from src.analysis.shortest_paths import all_pairs_shortest_paths, euclidean_matrix
from src.analysis.stretch import subgraph_spanner_ratio
from src.graphs.truncation import (
    build_complete_truncated,
    edge_length_ladder,
    intersect_unit_disk,
    truncate_by_length,
    unit_disk_graph,
)
from src.logger import get_logger
from src.models.analysis import StretchReport, ThresholdCheck
from src.models.geometry import Point2D
from src.models.graph import DirectedGeometricGraph

logger = get_logger(__name__)


def sample_thresholds(ladder: Sequence[float], count: int) -> list[float]:
    """``count`` evenly spaced rungs of the ladder, always including the
    first and the last."""
    if count >= len(ladder) or len(ladder) < 2:
        return list(ladder)
    picks = np.linspace(0, len(ladder) - 1, num=max(count, 2))
    return [ladder[int(round(k))] for k in picks]


def check_truncated_spanners(
    graph: DirectedGeometricGraph,
    t: float,
    thresholds: Sequence[float] | None = None,
) -> ThresholdCheck:
    """For every threshold L: graph ∩ C_L(P) must be a t-spanner of C_L(P)."""
    if thresholds is None:
        thresholds = edge_length_ladder(graph.vertices)
    ratios: list[float] = []
    worst = 1.0
    for length in thresholds:
        sub = truncate_by_length(graph, length)
        host = build_complete_truncated(graph.vertices, length)
        report = subgraph_spanner_ratio(sub, host)
        ratios.append(report.ratio)
        if not report.all_reachable or report.ratio > t:
            pair = report.first_unreachable if not report.all_reachable else report.witness_pair
            logger.info("Truncated graph is not a t-spanner", threshold=length, t=t, pair=pair)
            return ThresholdCheck(
                holds=False,
                t_used=t,
                thresholds_checked=len(ratios),
                worst_ratio=max(worst, report.ratio),
                failing_threshold=length,
                failing_pair=pair,
                ratios=ratios,
            )
        worst = max(worst, report.ratio)
    return ThresholdCheck(
        holds=True, t_used=t, thresholds_checked=len(ratios), worst_ratio=worst, ratios=ratios
    )


def check_truncated_paths(
    graph: DirectedGeometricGraph,
    t: float,
    thresholds: Sequence[float] | None = None,
) -> ThresholdCheck:
    """For every threshold L and every pair with |pq| ≤ L, graph ∩ C_L(P)
    must hold a p→q path of length ≤ t·|pq|."""
    if thresholds is None:
        thresholds = edge_length_ladder(graph.vertices)
    euclid = euclidean_matrix(graph.coords)
    off_diagonal = ~np.eye(graph.n, dtype=bool)
    ratios: list[float] = []
    for length in thresholds:
        dist = all_pairs_shortest_paths(truncate_by_length(graph, length))
        pairs = off_diagonal & (euclid <= length)
        bad = pairs & ~(dist <= t * euclid)
        finite = pairs & np.isfinite(dist)
        ratios.append(float((dist[finite] / euclid[finite]).max()) if finite.any() else 1.0)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return ThresholdCheck(
                holds=False,
                t_used=t,
                thresholds_checked=len(ratios),
                worst_ratio=max(ratios),
                failing_threshold=length,
                failing_pair=(int(i), int(j)),
                ratios=ratios,
            )
    return ThresholdCheck(
        holds=True,
        t_used=t,
        thresholds_checked=len(ratios),
        worst_ratio=max(ratios, default=1.0),
        ratios=ratios,
    )


def strong_spanner_via_truncations(graph: DirectedGeometricGraph, t: float) -> bool:
    """A graph is a strong t-spanner iff every truncation at a rung of its
    edge-length ladder is a t-spanner of the truncated complete graph."""
    return check_truncated_spanners(graph, t).holds


def udg_is_connected(points: Sequence[Point2D]) -> bool:
    """True when the unit disk graph over ``points`` is connected."""
    udg = unit_disk_graph(points)
    return bool(np.isfinite(all_pairs_shortest_paths(udg)).all())


def udg_spanner_ratio(graph: DirectedGeometricGraph) -> StretchReport:
    """Stretch of graph ∩ UDG(P) relative to UDG(P)."""
    return subgraph_spanner_ratio(intersect_unit_disk(graph), unit_disk_graph(graph.vertices))
