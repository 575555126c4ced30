"""Hand-shaped point sets: the HSP 3 − ε lower bound and the θ-graph whose
intersection with the unit disk graph disconnects.

Both are produced by a small deterministic search over a parameterized
family and returned only after validation against the builders.
"""

from __future__ import annotations

import math

from src.analysis.shortest_paths import shortest_path_lengths_from
from src.analysis.udg import udg_is_connected, udg_spanner_ratio
from src.config import get_settings
from src.graphs.builders import build_hsp, build_theta_graph
from src.graphs.truncation import intersect_unit_disk
from src.logger import get_logger
from src.models.geometry import Point2D
from src.models.graph import euclidean

logger = get_logger(__name__)

# vertex order of the HSP fixture: p, a, b, c, d, q
HSP_P, HSP_A, HSP_B, HSP_C, HSP_D, HSP_Q = range(6)
HSP_PATHS = ((HSP_P, HSP_A, HSP_B, HSP_Q), (HSP_P, HSP_C, HSP_D, HSP_Q))

# vertex order of the θ-graph fixture: p, q, s
THETA_P, THETA_Q, THETA_S = range(3)

# keeps 3 − 6δ strictly above 3 − ε after rounding
_DELTA_SHRINK = 1e-9


class FixtureSearchError(RuntimeError):
    """Raised when no candidate of a fixture family validates."""


# ── HSP lower bound ─────────────────────────────────────────────────────────


def _hsp_candidate(outer: float, inner: float) -> list[Point2D] | None:
    """p = (0, 0), q = (1, 0); |pa| = |ab| = |bq| = outer, |aq| = inner.

    c and d mirror a and b across the pq line.
    """
    ax = (outer * outer - inner * inner + 1.0) / 2.0
    ay_sq = outer * outer - ax * ax
    if ay_sq <= 0.0:
        return None
    ay = math.sqrt(ay_sq)
    ux, uy = 1.0 - ax, -ay
    half = inner / 2.0
    h_sq = outer * outer - half * half
    if h_sq <= 0.0:
        return None
    h = math.sqrt(h_sq)
    # unit normal of aq pointing away from p
    nx, ny = -uy / inner, ux / inner
    bx = (ax + 1.0) / 2.0 + h * nx
    by = ay / 2.0 + h * ny
    return [
        Point2D(x=0.0, y=0.0),
        Point2D(x=ax, y=ay),
        Point2D(x=bx, y=by),
        Point2D(x=ax, y=-ay),
        Point2D(x=bx, y=-by),
        Point2D(x=1.0, y=0.0),
    ]


def hsp_fixture_stretch(points: list[Point2D]) -> float:
    """HSP shortest-path length from p to q divided by |pq|."""
    hsp = build_hsp(points)
    d = shortest_path_lengths_from(hsp, HSP_P)[HSP_Q]
    p, q = points[HSP_P], points[HSP_Q]
    return d / euclidean(p.x, p.y, q.x, q.y)


def _path_length(points: list[Point2D], path: tuple[int, ...]) -> float:
    return sum(
        euclidean(points[u].x, points[u].y, points[v].x, points[v].y)
        for u, v in zip(path, path[1:])
    )


def hsp_lower_bound_fixture(epsilon: float) -> list[Point2D]:
    """Six points whose HSP has p→q stretch at least 3 − ε.

    Three hops of length 1 − 2δ (δ = ε/6) lead from p to q on either side
    of the pq line. The inner offset 1 − |aq| is halved until the HSP
    built on the candidate confirms the bound.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    delta = epsilon / 6.0 * (1.0 - _DELTA_SHRINK)
    outer = 1.0 - 2.0 * delta
    attempts = get_settings().hsp_fixture_max_attempts

    for attempt in range(attempts):
        inner = 1.0 - delta / 2.0**attempt
        points = _hsp_candidate(outer, inner)
        if points is None:
            continue
        stretch = hsp_fixture_stretch(points)
        symmetric = _path_length(points, HSP_PATHS[0]) == _path_length(points, HSP_PATHS[1])
        logger.debug("HSP fixture candidate", attempt=attempt, inner=inner, stretch=stretch)
        if symmetric and stretch >= 3.0 - epsilon:
            logger.info("HSP fixture found", epsilon=epsilon, stretch=stretch, attempt=attempt)
            return points

    raise FixtureSearchError(f"no HSP lower-bound configuration validated for epsilon={epsilon}")


# ── θ-graph ∩ UDG counterexample ────────────────────────────────────────────

_Q_DISTANCES = (0.99, 0.95, 0.9, 0.8)
_CONE_FRACTIONS = (0.95, 0.9, 0.8, 0.7)
_S_RADII = (1.01, 1.02, 1.05, 1.1)


def theta_fixture_disconnects(points: list[Point2D], cone_count: int) -> bool:
    """UDG(P) is connected but θ-graph ∩ UDG(P) has no p→q path."""
    if not udg_is_connected(points):
        return False
    theta = build_theta_graph(points, cone_count)
    if udg_spanner_ratio(theta).all_reachable:
        return False
    d = shortest_path_lengths_from(intersect_unit_disk(theta), THETA_P)[THETA_Q]
    return math.isinf(d)


def theta_udg_counterexample_fixture(cone_count: int | None = None) -> list[Point2D]:
    """p, q with |pq| < 1 and a third point s, |ps| > 1, sharing p's cone
    with q but with a smaller projection on its bisector: the θ-graph sends
    p's only edge to s, which the unit disk drops."""
    k = cone_count or get_settings().theta_fixture_cones
    half = math.pi / k
    for q_dist in _Q_DISTANCES:
        for frac in _CONE_FRACTIONS:
            for radius in _S_RADII:
                phi = frac * half
                points = [
                    Point2D(x=0.0, y=0.0),
                    Point2D(x=q_dist, y=0.0),
                    Point2D(x=radius * math.cos(phi), y=radius * math.sin(phi)),
                ]
                if theta_fixture_disconnects(points, k):
                    logger.info(
                        "Theta fixture found", cones=k, q_dist=q_dist, angle=phi, radius=radius
                    )
                    return points
    raise FixtureSearchError(f"no θ-graph counterexample validated for {k} cones")
