"""Local routing on directed geometric graphs.

A routing decision only sees a ``LocalView``: the current vertex, its
out-neighbors and the destination. Neighbors are ordered by (edge length,
x, y, index). DestroyerOfTarget picks the first qualifying neighbor in that
order and the farthest-destroyer variant the last one.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np

from src.config import get_settings
from src.geometry.predicates import destruction_mask, distances_from
from src.logger import get_logger
from src.models.analysis import StretchReport
from src.models.geometry import SpannerParams
from src.models.graph import DirectedGeometricGraph, euclidean
from src.models.routing import (
    LocalView,
    NeighborInfo,
    RoutingOutcome,
    RoutingStrategy,
    RoutingTrace,
)

logger = get_logger(__name__)

NO_MOVE = -1


class InvalidVertexError(ValueError):
    """Raised for out-of-range or coinciding routing endpoints."""


# ── Views ────────────────────────────────────────────────────────────────────


def _ordered_neighbors(graph: DirectedGeometricGraph, u: int) -> list[NeighborInfo]:
    infos = [
        NeighborInfo(index=e.target, position=graph.vertices[e.target], length=e.length)
        for e in graph.out_edges[u]
    ]
    infos.sort(key=lambda nb: (nb.length, nb.position.x, nb.position.y, nb.index))
    return infos


def local_view(graph: DirectedGeometricGraph, u: int, dest: int) -> LocalView:
    return LocalView(
        current=u,
        position=graph.vertices[u],
        neighbors=tuple(_ordered_neighbors(graph, u)),
        dest=dest,
        dest_position=graph.vertices[dest],
    )


# ── Step kernels (one current vertex, many destinations) ────────────────────


def destroyer_choices(
    position: np.ndarray,
    nbr_coords: np.ndarray,
    nbr_lengths: np.ndarray,
    dest_coords: np.ndarray,
    params: SpannerParams,
) -> np.ndarray:
    """Per destination, the position in the neighbor list of the shortest
    out-edge (u, r) with |ur| ≤ |u·dest| and dest ∈ K(u, r), or NO_MOVE."""
    choice = np.full(dest_coords.shape[0], NO_MOVE, dtype=np.int64)
    d_udest = distances_from(position, dest_coords)
    for k in range(nbr_coords.shape[0]):
        ok = (
            (choice == NO_MOVE)
            & (nbr_lengths[k] <= d_udest)
            & destruction_mask(position, nbr_coords[k], dest_coords, params)
        )
        choice[ok] = k
    return choice


def farthest_destroyer_choices(
    position: np.ndarray,
    nbr_coords: np.ndarray,
    dest_coords: np.ndarray,
    params: SpannerParams,
) -> np.ndarray:
    """Per destination, the position of the last neighbor in view order
    (the longest out-edge) with dest ∈ K(u, r), or NO_MOVE.

    Unlike ``destroyer_choices`` the edge may be longer than |u·dest|, so
    progress toward the destination is not guaranteed.
    """
    choice = np.full(dest_coords.shape[0], NO_MOVE, dtype=np.int64)
    for k in range(nbr_coords.shape[0]):
        choice[destruction_mask(position, nbr_coords[k], dest_coords, params)] = k
    return choice


def nearest_choices(nbr_coords: np.ndarray, dest_coords: np.ndarray) -> np.ndarray:
    """Per destination, the position of the neighbor closest to it."""
    if nbr_coords.shape[0] == 0:
        return np.full(dest_coords.shape[0], NO_MOVE, dtype=np.int64)
    dx = dest_coords[np.newaxis, :, 0] - nbr_coords[:, np.newaxis, 0]
    dy = dest_coords[np.newaxis, :, 1] - nbr_coords[:, np.newaxis, 1]
    return np.argmin(np.sqrt(dx * dx + dy * dy), axis=0).astype(np.int64)


def _choices(
    strategy: RoutingStrategy,
    position: np.ndarray,
    nbr_coords: np.ndarray,
    nbr_lengths: np.ndarray,
    dest_coords: np.ndarray,
    params: SpannerParams,
) -> np.ndarray:
    match strategy:
        case RoutingStrategy.DESTROYER_OF_TARGET:
            return destroyer_choices(position, nbr_coords, nbr_lengths, dest_coords, params)
        case RoutingStrategy.NEAREST_TO_TARGET:
            return nearest_choices(nbr_coords, dest_coords)
        case RoutingStrategy.FARTHEST_DESTROYER:
            return farthest_destroyer_choices(position, nbr_coords, dest_coords, params)
    raise ValueError(f"Unsupported routing strategy: {strategy}")


def _view_arrays(view: LocalView) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    position = np.array([view.position.x, view.position.y], dtype=np.float64)
    coords = np.array(
        [[nb.position.x, nb.position.y] for nb in view.neighbors], dtype=np.float64
    ).reshape(-1, 2)
    lengths = np.array([nb.length for nb in view.neighbors], dtype=np.float64)
    return position, coords, lengths


def step(view: LocalView, params: SpannerParams, strategy: RoutingStrategy) -> int | None:
    """Next vertex from ``view``, or None when no neighbor qualifies."""
    for nb in view.neighbors:
        if nb.index == view.dest:
            return nb.index
    position, coords, lengths = _view_arrays(view)
    dest = np.array([[view.dest_position.x, view.dest_position.y]], dtype=np.float64)
    k = int(_choices(strategy, position, coords, lengths, dest, params)[0])
    return None if k == NO_MOVE else view.neighbors[k].index


def next_hop_table(
    graph: DirectedGeometricGraph, params: SpannerParams, strategy: RoutingStrategy
) -> np.ndarray:
    """(n, n) table: entry [u, d] is the vertex ``step`` picks at u for
    destination d, NO_MOVE when none."""
    n = graph.n
    table = np.full((n, n), NO_MOVE, dtype=np.int64)
    coords = graph.coords
    for u in range(n):
        neighbors = _ordered_neighbors(graph, u)
        position = coords[u]
        nbr_index = np.array([nb.index for nb in neighbors], dtype=np.int64)
        nbr_coords = coords[nbr_index].reshape(-1, 2)
        nbr_lengths = np.array([nb.length for nb in neighbors], dtype=np.float64)
        picks = _choices(strategy, position, nbr_coords, nbr_lengths, coords, params)
        moved = picks != NO_MOVE
        table[u, moved] = nbr_index[picks[moved]]
        # a direct edge always wins
        table[u, nbr_index] = nbr_index
    return table


# ── Routing ──────────────────────────────────────────────────────────────────


def _resolve_hop_limit(graph: DirectedGeometricGraph, hop_limit: int | None) -> int:
    if hop_limit is None:
        hop_limit = get_settings().route_hop_limit or graph.n
    if hop_limit < 1:
        raise ValueError(f"hop_limit must be at least 1, got {hop_limit}")
    return hop_limit


def _check_endpoints(graph: DirectedGeometricGraph, source: int, dest: int) -> None:
    for v in (source, dest):
        if not 0 <= v < graph.n:
            raise InvalidVertexError(f"vertex {v} outside 0..{graph.n - 1}")
    if source == dest:
        raise InvalidVertexError(f"source and destination are both {source}")


def _walk(
    graph: DirectedGeometricGraph,
    source: int,
    dest: int,
    hop_limit: int,
    next_vertex: Callable[[int], int | None],
) -> RoutingTrace:
    sequence = [source]
    total = 0.0
    u = source
    outcome = RoutingOutcome.DELIVERED
    while u != dest:
        if len(sequence) - 1 >= hop_limit:
            outcome = RoutingOutcome.FAILED_HOP_LIMIT
            break
        nxt = next_vertex(u)
        if nxt is None:
            outcome = RoutingOutcome.FAILED_NO_MOVE
            break
        a, b = graph.vertices[u], graph.vertices[nxt]
        total += euclidean(a.x, a.y, b.x, b.y)
        sequence.append(nxt)
        u = nxt
    return RoutingTrace(vertex_sequence=sequence, total_length=total, outcome=outcome)


def route(
    graph: DirectedGeometricGraph,
    params: SpannerParams,
    source: int,
    dest: int,
    strategy: RoutingStrategy,
    hop_limit: int | None = None,
) -> RoutingTrace:
    """Route from ``source`` to ``dest`` taking one local decision per hop."""
    _check_endpoints(graph, source, dest)
    limit = _resolve_hop_limit(graph, hop_limit)
    trace = _walk(
        graph,
        source,
        dest,
        limit,
        lambda u: step(local_view(graph, u, dest), params, strategy),
    )
    logger.debug(
        "Routed",
        source=source,
        dest=dest,
        strategy=strategy.value,
        hops=trace.hop_count,
        outcome=trace.outcome.value,
    )
    return trace


def routing_ratio(
    graph: DirectedGeometricGraph,
    params: SpannerParams,
    strategy: RoutingStrategy,
    hop_limit: int | None = None,
) -> StretchReport:
    """max over ordered pairs of route length / |pq|; undelivered pairs are
    reported as unreachable."""
    n = graph.n
    if n < 2:
        return StretchReport()
    limit = _resolve_hop_limit(graph, hop_limit)
    table = next_hop_table(graph, params, strategy)

    def next_vertex_for(dest: int) -> Callable[[int], int | None]:
        def nxt(u: int) -> int | None:
            v = int(table[u, dest])
            return None if v == NO_MOVE else v

        return nxt

    best = -math.inf
    witness: tuple[int, int] | None = None
    failures = 0
    first_failure: tuple[int, int] | None = None
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            trace = _walk(graph, p, q, limit, next_vertex_for(q))
            if not trace.delivered:
                failures += 1
                if first_failure is None:
                    first_failure = (p, q)
                    logger.warning(
                        "Routing failed", pair=(p, q), strategy=strategy.value,
                        outcome=trace.outcome.value,
                    )
                continue
            a, b = graph.vertices[p], graph.vertices[q]
            ratio = trace.total_length / euclidean(a.x, a.y, b.x, b.y)
            if ratio > best:
                best, witness = ratio, (p, q)

    return StretchReport(
        ratio=best if witness is not None else math.inf,
        witness_pair=witness,
        all_reachable=failures == 0,
        unreachable_pairs=failures,
        first_unreachable=first_failure,
    )
