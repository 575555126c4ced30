"""Spanning ratios, strong-spanner certificates and out-degree statistics."""

from __future__ import annotations

import math

import numpy as np

from src.analysis.shortest_paths import (
    all_pairs_shortest_paths,
    euclidean_matrix,
    shortest_path_lengths_from,
)
from src.logger import get_logger
from src.models.analysis import StretchReport, StrongSpannerCertificate
from src.models.graph import DirectedGeometricGraph

logger = get_logger(__name__)


class VertexSetMismatchError(ValueError):
    """Raised when two graphs compared pairwise do not share their vertices."""


def _ratio_report(numer: np.ndarray, denom: np.ndarray, considered: np.ndarray) -> StretchReport:
    """Max of numer/denom over ``considered`` pairs; infinite numerators are
    reported as unreachable."""
    if not considered.any():
        return StretchReport()
    unreachable = considered & ~np.isfinite(numer)
    reachable = considered & np.isfinite(numer)
    first_unreachable: tuple[int, int] | None = None
    n_unreachable = int(unreachable.sum())
    if n_unreachable:
        i, j = np.argwhere(unreachable)[0]
        first_unreachable = (int(i), int(j))

    if not reachable.any():
        return StretchReport(
            ratio=math.inf,
            witness_pair=None,
            all_reachable=n_unreachable == 0,
            unreachable_pairs=n_unreachable,
            first_unreachable=first_unreachable,
        )

    ratios = np.full(numer.shape, -np.inf)
    ratios[reachable] = numer[reachable] / denom[reachable]
    flat = int(np.argmax(ratios))
    i, j = divmod(flat, ratios.shape[1])
    return StretchReport(
        ratio=float(ratios[i, j]),
        witness_pair=(i, j),
        all_reachable=n_unreachable == 0,
        unreachable_pairs=n_unreachable,
        first_unreachable=first_unreachable,
    )


def spanning_ratio(graph: DirectedGeometricGraph) -> StretchReport:
    """max over ordered pairs p ≠ q of d_G(p, q) / |pq|."""
    if graph.n < 2:
        raise ValueError("spanning ratio needs at least two vertices")
    dist = all_pairs_shortest_paths(graph)
    euclid = euclidean_matrix(graph.coords)
    off_diagonal = ~np.eye(graph.n, dtype=bool)
    report = _ratio_report(dist, euclid, off_diagonal)
    if not report.all_reachable:
        logger.warning(
            "Graph has unreachable pairs",
            kind=graph.kind,
            unreachable=report.unreachable_pairs,
            first=report.first_unreachable,
        )
    return report


def verify_strong_spanner(graph: DirectedGeometricGraph, t: float) -> StrongSpannerCertificate:
    """Check that every ordered pair (p, q) has a path of length ≤ t·|pq|
    using only edges of length ≤ |pq|."""
    if t < 1.0:
        raise ValueError(f"t must be at least 1, got {t}")
    euclid = euclidean_matrix(graph.coords)
    for p in range(graph.n):
        for q in range(graph.n):
            if p == q or graph.has_edge(p, q):
                continue
            cap = float(euclid[p, q])
            d = shortest_path_lengths_from(graph, p, edge_cap=cap, stop_at=q)[q]
            if not d <= t * cap:
                logger.info("Strong spanner check failed", pair=(p, q), length=d, cap=cap, t=t)
                return StrongSpannerCertificate(
                    holds=False, t_used=t, failing_pair=(p, q), failing_length=d
                )
    return StrongSpannerCertificate(holds=True, t_used=t)


def max_out_degree(graph: DirectedGeometricGraph) -> int:
    return max((len(es) for es in graph.out_edges), default=0)


def subgraph_spanner_ratio(
    subgraph: DirectedGeometricGraph, host: DirectedGeometricGraph
) -> StretchReport:
    """max over host-reachable pairs of d_subgraph(p, q) / d_host(p, q)."""
    if not subgraph.same_vertices(host):
        raise VertexSetMismatchError("subgraph and host have different vertex sets")
    extra = subgraph.edge_set() - host.edge_set()
    if extra:
        raise ValueError(f"subgraph has {len(extra)} edges outside the host, e.g. {min(extra)}")
    if host.n < 2:
        return StretchReport()
    d_sub = all_pairs_shortest_paths(subgraph)
    d_host = all_pairs_shortest_paths(host)
    considered = ~np.eye(host.n, dtype=bool) & np.isfinite(d_host)
    return _ratio_report(d_sub, d_host, considered)
