"""Shortest-path engines over directed geometric graphs.

Unreachable vertices get ``math.inf``.
"""

from __future__ import annotations

import heapq
import math

import numpy as np
from scipy.sparse.csgraph import dijkstra

from src.models.graph import DirectedGeometricGraph


def shortest_path_lengths_from(
    graph: DirectedGeometricGraph,
    source: int,
    edge_cap: float | None = None,
    stop_at: int | None = None,
) -> list[float]:
    """Single-source Dijkstra; edges longer than ``edge_cap`` are ignored.

    With ``stop_at`` the search ends once that vertex is settled, so only
    its entry (and those settled before it) are final.
    """
    if not 0 <= source < graph.n:
        raise IndexError(f"source {source} outside 0..{graph.n - 1}")
    dist = [math.inf] * graph.n
    dist[source] = 0.0
    done = [False] * graph.n
    heap: list[tuple[float, int]] = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == stop_at:
            break
        for e in graph.out_edges[u]:
            if edge_cap is not None and e.length > edge_cap:
                # adjacency is sorted by length
                break
            nd = d + e.length
            if nd < dist[e.target]:
                dist[e.target] = nd
                heapq.heappush(heap, (nd, e.target))
    return dist


def all_pairs_shortest_paths(graph: DirectedGeometricGraph) -> np.ndarray:
    """(n, n) matrix of shortest path lengths, ``inf`` where unreachable."""
    if graph.n == 0:
        return np.zeros((0, 0), dtype=np.float64)
    return np.asarray(dijkstra(graph.to_csr(), directed=True), dtype=np.float64)


def euclidean_matrix(coords: np.ndarray) -> np.ndarray:
    """|pq| for every ordered pair, with the same arithmetic as edge lengths."""
    dx = coords[np.newaxis, :, 0] - coords[:, np.newaxis, 0]
    dy = coords[np.newaxis, :, 1] - coords[:, np.newaxis, 1]
    return np.sqrt(dx * dx + dy * dy)
