"""Seeded uniform point sets.

Points come from numpy's PCG64 bit generator seeded through a
``SeedSequence``; instance ``i`` of a sweep uses the child stream with
spawn key ``(i,)``, so a point set depends only on (seed, i) and is
bit-identical on every platform.
"""

from __future__ import annotations

import numpy as np

from src.logger import get_logger
from src.models.geometry import Point2D

logger = get_logger(__name__)


def point_rng(seed: int, stream: int | None = None) -> np.random.Generator:
    spawn_key = () if stream is None else (stream,)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=spawn_key)))


def generate_array(n: int, seed: int, stream: int | None = None) -> np.ndarray:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    rng = point_rng(seed, stream)
    pts = rng.random((n, 2))
    while True:
        _, first = np.unique(pts, axis=0, return_index=True)
        if first.size == n:
            return pts
        dup = np.ones(n, dtype=bool)
        dup[first] = False
        logger.warning("Regenerating duplicate points", count=int(dup.sum()), seed=seed)
        pts[dup] = rng.random((int(dup.sum()), 2))


def generate_points(n: int, seed: int, stream: int | None = None) -> list[Point2D]:
    """n i.i.d. uniform points on the unit square."""
    return [Point2D(x=float(x), y=float(y)) for x, y in generate_array(n, seed, stream)]
