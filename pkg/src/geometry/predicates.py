"""Destruction-region and destroyer-region predicates.

Scalar predicates take ``Point2D`` values and delegate to the vectorized
kernels below, so a builder that tests many candidates at once and a
reference implementation that tests one at a time evaluate exactly the
same floating-point expressions.

All regions are closed and no epsilon is applied; inputs are assumed to be
in general position.
"""

from __future__ import annotations

import numpy as np

from src.models.geometry import Point2D, SpannerParams
from src.models.graph import euclidean


class DegenerateInputError(ValueError):
    """Raised when an apex coincides with the point defining a region."""


# ── Vectorized kernels ──────────────────────────────────────────────────────


def angle_kernel(p: np.ndarray, r: np.ndarray, qs: np.ndarray) -> np.ndarray:
    """∠q p r for every row q of ``qs``, in [0, π]."""
    vx = r[0] - p[0]
    vy = r[1] - p[1]
    wx = qs[:, 0] - p[0]
    wy = qs[:, 1] - p[1]
    dot = wx * vx + wy * vy
    cross = np.abs(wx * vy - wy * vx)
    return np.arctan2(cross, dot)


def theta_cone_mask(p: np.ndarray, r: np.ndarray, qs: np.ndarray, theta: float) -> np.ndarray:
    angles = angle_kernel(p, r, qs)
    not_apex = (qs[:, 0] != p[0]) | (qs[:, 1] != p[1])
    return (angles <= theta) & not_apex


def lambda_halfplane_mask(p: np.ndarray, r: np.ndarray, qs: np.ndarray, lam: float) -> np.ndarray:
    vx = r[0] - p[0]
    vy = r[1] - p[1]
    norm_v = np.sqrt(vx * vx + vy * vy)
    wx = qs[:, 0] - p[0]
    wy = qs[:, 1] - p[1]
    projection = (wx * vx + wy * vy) / norm_v
    return projection >= norm_v / (2.0 * lam)


def destruction_mask(
    p: np.ndarray, r: np.ndarray, qs: np.ndarray, params: SpannerParams
) -> np.ndarray:
    """Rows of ``qs`` lying in K(p, r)."""
    return theta_cone_mask(p, r, qs, params.theta) & lambda_halfplane_mask(
        p, r, qs, params.lam
    )


def distances_from(p: np.ndarray, qs: np.ndarray) -> np.ndarray:
    dx = qs[:, 0] - p[0]
    dy = qs[:, 1] - p[1]
    return np.sqrt(dx * dx + dy * dy)


def hsp_destruction_mask(p: np.ndarray, r: np.ndarray, qs: np.ndarray) -> np.ndarray:
    """Rows q with |pr| < |pq| and q strictly closer to r than to p."""
    d_pq = distances_from(p, qs)
    d_rq = distances_from(r, qs)
    d_pr = distances_from(p, r.reshape(1, 2))[0]
    return (d_rq < d_pq) & (d_pr < d_pq)


# ── Scalar predicates ───────────────────────────────────────────────────────


def _arr(pt: Point2D) -> np.ndarray:
    return np.array([pt.x, pt.y], dtype=np.float64)


def _row(pt: Point2D) -> np.ndarray:
    return np.array([[pt.x, pt.y]], dtype=np.float64)


def _require_distinct(a: Point2D, b: Point2D, what: str) -> None:
    if a.x == b.x and a.y == b.y:
        raise DegenerateInputError(f"degenerate {what}: both points are ({a.x}, {a.y})")


def distance(p: Point2D, q: Point2D) -> float:
    """Euclidean distance |pq|."""
    return euclidean(p.x, p.y, q.x, q.y)


def angle_at(p: Point2D, r: Point2D, q: Point2D) -> float:
    """The angle ∠qpr in radians."""
    _require_distinct(p, r, "apex")
    return float(angle_kernel(_arr(p), _arr(r), _row(q))[0])


def in_theta_cone(p: Point2D, r: Point2D, q: Point2D, theta: float) -> bool:
    """True iff ∠qpr ≤ θ (q lies in the θ-cone with apex p around ray pr)."""
    _require_distinct(p, r, "apex")
    return bool(theta_cone_mask(_arr(p), _arr(r), _row(q), theta)[0])


def in_lambda_halfplane(p: Point2D, r: Point2D, q: Point2D, lam: float) -> bool:
    """True iff the projection of q − p on direction pr is at least |pr|/(2λ)."""
    _require_distinct(p, r, "apex")
    return bool(lambda_halfplane_mask(_arr(p), _arr(r), _row(q), lam)[0])


def in_destruction_region(p: Point2D, r: Point2D, q: Point2D, params: SpannerParams) -> bool:
    """q ∈ K(p, r)."""
    _require_distinct(p, r, "apex")
    return bool(destruction_mask(_arr(p), _arr(r), _row(q), params)[0])


def is_destroyer_position(p: Point2D, q: Point2D, r: Point2D, params: SpannerParams) -> bool:
    """True iff r may destroy (p, q): q ∈ K(p, r) and |pr| ≤ |pq|."""
    _require_distinct(p, q, "pair")
    _require_distinct(p, r, "apex")
    return in_destruction_region(p, r, q, params) and distance(p, r) <= distance(p, q)


def in_destroyer_lune(p: Point2D, q: Point2D, r: Point2D, lam: float) -> bool:
    """r ∈ R(p, q, λ): inside the disk around p of radius |pq| and the disk
    around p + λ(q − p) of radius λ|pq|."""
    _require_distinct(p, q, "pair")
    d_pq = distance(p, q)
    c = Point2D(x=p.x + lam * (q.x - p.x), y=p.y + lam * (q.y - p.y))
    return distance(p, r) <= d_pq and distance(c, r) <= lam * d_pq


def in_destroyer_region(p: Point2D, q: Point2D, r: Point2D, params: SpannerParams) -> bool:
    """r ∈ R(p, q, λ) ∩ θ-cone(p, q), the region where destroyers of (p, q) live."""
    return in_destroyer_lune(p, q, r, params.lam) and in_theta_cone(p, q, r, params.theta)
