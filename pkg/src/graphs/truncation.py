"""Length-threshold truncations: C_i(P), G ∩ C_i and the unit disk graph."""

from __future__ import annotations

import itertools
from collections.abc import Sequence

from src.graphs.builders import check_distinct
from src.logger import get_logger
from src.models.geometry import Point2D
from src.models.graph import DirectedGeometricGraph, EdgeRankIndex, RankedEdge, euclidean

logger = get_logger(__name__)

UNIT_DISK_RADIUS = 1.0


def edge_rank_index(points: Sequence[Point2D]) -> EdgeRankIndex:
    """Complete-graph edges ranked by length; ties ordered by (u, v) and flagged."""
    pairs = [
        (euclidean(points[u].x, points[u].y, points[v].x, points[v].y), u, v)
        for u, v in itertools.combinations(range(len(points)), 2)
    ]
    pairs.sort()
    has_ties = any(a[0] == b[0] for a, b in itertools.pairwise(pairs))
    if has_ties:
        logger.warning("Equal pairwise distances; ranks use (u, v) order", n=len(points))
    edges = [RankedEdge(rank, u, v, length) for rank, (length, u, v) in enumerate(pairs, start=1)]
    return EdgeRankIndex(edges=edges, has_ties=has_ties)


def edge_length_ladder(points: Sequence[Point2D]) -> list[float]:
    """Distinct complete-graph edge lengths L_1 < L_2 < …"""
    return sorted({e.length for e in edge_rank_index(points).edges})


def truncate_by_length(graph: DirectedGeometricGraph, max_length: float) -> DirectedGeometricGraph:
    """Keep exactly the edges of length ≤ max_length."""
    if max_length < 0:
        raise ValueError(f"max_length must be non-negative, got {max_length}")
    out = [[e for e in es if e.length <= max_length] for es in graph.out_edges]
    return DirectedGeometricGraph(
        vertices=graph.vertices, out_edges=out, kind=f"{graph.kind}<={max_length!r}"
    )


def build_complete_truncated(
    points: Sequence[Point2D], max_length: float
) -> DirectedGeometricGraph:
    """C_i(P) realized by a length threshold (both directions of every edge)."""
    check_distinct(points)
    vertices = list(points)
    targets: list[list[int]] = [[] for _ in vertices]
    for u, v in itertools.combinations(range(len(vertices)), 2):
        a, b = vertices[u], vertices[v]
        if euclidean(a.x, a.y, b.x, b.y) <= max_length:
            targets[u].append(v)
            targets[v].append(u)
    return DirectedGeometricGraph.from_targets(vertices, targets, kind=f"complete<={max_length!r}")


def unit_disk_graph(points: Sequence[Point2D]) -> DirectedGeometricGraph:
    return build_complete_truncated(points, UNIT_DISK_RADIUS)


def intersect_unit_disk(graph: DirectedGeometricGraph) -> DirectedGeometricGraph:
    return truncate_by_length(graph, UNIT_DISK_RADIUS)
