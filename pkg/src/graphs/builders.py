"""Constructions of G_λ^θ, Half-Space Proximal and θ-graphs over a point set.

G_λ^θ and HSP share one sweep: for every vertex p the remaining candidates
are visited closest first, each visited r becomes an out-edge of p, and the
candidates that r destroys are dropped. Distance ties are broken by
(x, y, input index).
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence

import numpy as np

from src.geometry.predicates import (
    destruction_mask,
    distances_from,
    hsp_destruction_mask,
    in_destruction_region,
)
from src.logger import get_logger
from src.models.geometry import Point2D, SpannerParams
from src.models.graph import DirectedGeometricGraph

logger = get_logger(__name__)

# (p, r, candidates) -> mask of candidates destroyed by r
DestroyFn = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class DuplicatePointError(ValueError):
    """Raised when a point set contains the same point twice."""


def check_distinct(points: Sequence[Point2D]) -> None:
    seen: dict[tuple[float, float], int] = {}
    for i, pt in enumerate(points):
        key = pt.as_tuple()
        if key in seen:
            raise DuplicatePointError(f"points {seen[key]} and {i} coincide at {key}")
        seen[key] = i


def as_array(points: Sequence[Point2D]) -> np.ndarray:
    return np.array([[pt.x, pt.y] for pt in points], dtype=np.float64).reshape(-1, 2)


def candidate_order(coords: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Indices of all vertices but ``i`` sorted by (distance, x, y, index),
    together with their distances."""
    n = coords.shape[0]
    idx = np.array([j for j in range(n) if j != i], dtype=np.int64)
    d = distances_from(coords[i], coords[idx])
    order = np.lexsort((idx, coords[idx, 1], coords[idx, 0], d))
    return idx[order], d[order]


def _sweep_vertex(coords: np.ndarray, i: int, destroys: DestroyFn) -> list[int]:
    cand, _ = candidate_order(coords, i)
    if cand.size == 0:
        return []
    p = coords[i]
    cand_coords = coords[cand]
    alive = np.ones(cand.size, dtype=bool)
    chosen: list[int] = []
    pos = 0
    while True:
        while pos < cand.size and not alive[pos]:
            pos += 1
        if pos == cand.size:
            break
        r = coords[cand[pos]]
        chosen.append(int(cand[pos]))
        killed = destroys(p, r, cand_coords)
        killed[pos] = True
        alive &= ~killed
    return chosen


def _sweep(points: Sequence[Point2D], destroys: DestroyFn, kind: str) -> DirectedGeometricGraph:
    check_distinct(points)
    vertices = list(points)
    coords = as_array(vertices)
    targets = [_sweep_vertex(coords, i, destroys) for i in range(len(vertices))]
    graph = DirectedGeometricGraph.from_targets(vertices, targets, kind=kind)
    logger.debug("Graph built", kind=kind, n=graph.n, edges=graph.edge_count)
    return graph


def build_glt(points: Sequence[Point2D], params: SpannerParams) -> DirectedGeometricGraph:
    """G_λ^θ by the closest-first destruction sweep."""

    def destroys(p: np.ndarray, r: np.ndarray, qs: np.ndarray) -> np.ndarray:
        return destruction_mask(p, r, qs, params)

    return _sweep(points, destroys, kind="glt")


def build_glt_declarative(
    points: Sequence[Point2D], params: SpannerParams
) -> DirectedGeometricGraph:
    """Reference G_λ^θ straight from the destroyer definition.

    Candidates are visited in the same order as ``build_glt``; q is accepted
    iff no previously accepted r has q ∈ K(p, r).
    """
    check_distinct(points)
    vertices = list(points)
    coords = as_array(vertices)
    targets: list[list[int]] = []
    for i, p in enumerate(vertices):
        cand, _ = candidate_order(coords, i)
        accepted: list[int] = []
        for j in cand.tolist():
            q = vertices[j]
            if not any(in_destruction_region(p, vertices[r], q, params) for r in accepted):
                accepted.append(j)
        targets.append(accepted)
    return DirectedGeometricGraph.from_targets(vertices, targets, kind="glt")


def build_hsp(points: Sequence[Point2D]) -> DirectedGeometricGraph:
    """Half-Space Proximal graph."""
    return _sweep(points, hsp_destruction_mask, kind="hsp")


# ── θ-graph ──────────────────────────────────────────────────────────────────


def cone_index(dx: float, dy: float, cone_count: int) -> int:
    """Cone of direction (dx, dy); cone 0 is bisected by +x and each cone
    includes its clockwise boundary."""
    width = 2.0 * math.pi / cone_count
    phi = math.atan2(dy, dx)
    shifted = (phi + width / 2.0) % (2.0 * math.pi)
    return int(math.floor(shifted / width)) % cone_count


def theta_graph_stretch_bound(cone_count: int) -> float:
    """Nominal θ-graph stretch 1/(1 − 2 sin(π/k)); +∞ when k ≤ 6."""
    if cone_count <= 6:
        return math.inf
    return 1.0 / (1.0 - 2.0 * math.sin(math.pi / cone_count))


def build_theta_graph(points: Sequence[Point2D], cone_count: int) -> DirectedGeometricGraph:
    """Classical θ-graph: per nonempty cone, the point with the smallest
    projection on the cone bisector."""
    if cone_count < 3:
        raise ValueError(f"cone_count must be at least 3, got {cone_count}")
    check_distinct(points)
    vertices = list(points)
    width = 2.0 * math.pi / cone_count
    bisectors = [(math.cos(k * width), math.sin(k * width)) for k in range(cone_count)]

    targets: list[list[int]] = []
    for i, p in enumerate(vertices):
        best: dict[int, tuple[float, float, float, int]] = {}
        for j, q in enumerate(vertices):
            if j == i:
                continue
            dx, dy = q.x - p.x, q.y - p.y
            k = cone_index(dx, dy, cone_count)
            bx, by = bisectors[k]
            key = (dx * bx + dy * by, q.x, q.y, j)
            if k not in best or key < best[k]:
                best[k] = key
        targets.append([key[3] for key in best.values()])

    graph = DirectedGeometricGraph.from_targets(vertices, targets, kind="theta")
    logger.debug("Graph built", kind="theta", cones=cone_count, n=graph.n, edges=graph.edge_count)
    return graph
