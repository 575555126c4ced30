"""Tests for G_λ^θ, HSP and θ-graph construction."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.experiments.points import generate_points, point_rng
from src.graphs.builders import (
    DuplicatePointError,
    build_glt,
    build_glt_declarative,
    build_hsp,
    build_theta_graph,
    cone_index,
    theta_graph_stretch_bound,
)
from src.models.geometry import Point2D, SpannerParams


def P(x: float, y: float) -> Point2D:
    return Point2D(x=x, y=y)


def _nearest_neighbor(points: list[Point2D], i: int) -> int:
    p = points[i]
    return min(
        (j for j in range(len(points)) if j != i),
        key=lambda j: (
            math.hypot(points[j].x - p.x, points[j].y - p.y), points[j].x, points[j].y, j
        ),
    )


def _check_against_oracle(seeds: range) -> None:
    """Each seed draws its own n ≤ 60, (λ, θ) and point set."""
    for seed in seeds:
        rng = point_rng(seed, stream=1)
        n = int(rng.integers(2, 61))
        params = SpannerParams(
            lam=float(rng.uniform(0.5, 1.0)), theta=float(rng.uniform(0, math.pi / 2))
        )
        points = generate_points(n, seed)
        fast = build_glt(points, params)
        slow = build_glt_declarative(points, params)
        assert fast.edge_set() == slow.edge_set(), (seed, n, params)


class TestBuildGlt:
    def test_two_points(self, params):
        g = build_glt([P(0, 0), P(1, 0)], params)
        assert g.edge_set() == {(0, 1), (1, 0)}
        assert g.kind == "glt"

    def test_collinear_destruction(self, collinear_points, params):
        g = build_glt(collinear_points, params)
        assert g.edge_set() == {(0, 1), (1, 0), (1, 2), (2, 1)}

    def test_empty_and_single(self, params):
        assert build_glt([], params).n == 0
        single = build_glt([P(0.3, 0.3)], params)
        assert single.n == 1 and single.edge_count == 0

    def test_duplicates_rejected(self, params):
        with pytest.raises(DuplicatePointError):
            build_glt([P(0, 0), P(1, 1), P(0, 0)], params)

    def test_matches_declarative_oracle(self):
        points = generate_points(20, seed=5)
        params = SpannerParams.from_degrees(0.8, 60)
        fast = build_glt(points, params)
        assert fast.edge_set() == build_glt_declarative(points, params).edge_set()

    def test_oracle_random_parameters(self):
        rng = point_rng(2024)
        points = generate_points(50, seed=9)
        for _ in range(20):
            params = SpannerParams(
                lam=float(rng.uniform(0.5, 1.0)), theta=float(rng.uniform(0, math.pi / 2))
            )
            fast = build_glt(points, params)
            slow = build_glt_declarative(points, params)
            assert fast.edge_set() == slow.edge_set(), params

    def test_oracle_seeded_instances(self):
        _check_against_oracle(range(25))

    @pytest.mark.slow
    def test_oracle_seeded_instances_full(self):
        _check_against_oracle(range(500))

    def test_oracle_small_cases(self, collinear_points, params):
        two = [P(0, 0), P(1, 0)]
        assert build_glt_declarative(two, params).edge_set() == build_glt(two, params).edge_set()
        assert (
            build_glt_declarative(collinear_points, params).edge_set()
            == build_glt(collinear_points, params).edge_set()
        )

    def test_nearest_neighbor_edge_present(self, random_points):
        g = build_glt(random_points, SpannerParams.from_degrees(0.6, 75))
        for i in range(g.n):
            assert g.has_edge(i, _nearest_neighbor(random_points, i))

    @pytest.mark.parametrize(
        "lam, theta_deg", [(0.55, 15), (0.7, 30), (0.85, 60), (0.95, 75), (1.0, 90)]
    )
    def test_out_degree_bound(self, lam, theta_deg):
        params = SpannerParams.from_degrees(lam, theta_deg)
        g = build_glt(generate_points(150, seed=17), params)
        bound = params.out_degree_bound
        assert bound is not None
        assert max(g.out_degree(i) for i in range(g.n)) <= bound

    def test_degree_six_corollary(self):
        g = build_glt(generate_points(200, seed=3), SpannerParams.from_degrees(0.85, 60))
        assert max(g.out_degree(i) for i in range(g.n)) <= 6

    def test_theta_zero_is_nearly_complete(self, random_points):
        # only exactly collinear points are destroyed when θ = 0
        g = build_glt(random_points, SpannerParams.from_degrees(0.75, 0))
        n = len(random_points)
        assert g.edge_count == n * (n - 1)

    def test_adjacency_lengths_are_exact(self, random_points, params):
        g = build_glt(random_points, params)
        for i, j, length in g.edges():
            a, b = random_points[i], random_points[j]
            dx, dy = b.x - a.x, b.y - a.y
            assert length == math.sqrt(dx * dx + dy * dy)


class TestSimilarityInvariance:
    @pytest.mark.parametrize(
        "transform",
        [
            lambda x, y: (2.0 * x, 2.0 * y),
            lambda x, y: (-y, x),
            lambda x, y: (x + 3.0, y - 5.0),
        ],
        ids=["scale", "rotate90", "translate"],
    )
    def test_edge_sets_invariant(self, transform, random_points, params):
        moved = [P(*transform(p.x, p.y)) for p in random_points]
        assert build_glt(moved, params).edge_set() == build_glt(random_points, params).edge_set()
        assert build_hsp(moved).edge_set() == build_hsp(random_points).edge_set()


class TestBuildHsp:
    def test_two_points(self):
        assert build_hsp([P(0, 0), P(1, 0)]).edge_set() == {(0, 1), (1, 0)}

    def test_collinear(self, collinear_points):
        assert build_hsp(collinear_points).edge_set() == {(0, 1), (1, 0), (1, 2), (2, 1)}

    def test_equidistant_point_not_destroyed(self):
        # |rq| = |pq| = √4.25 for r = (1, 0), q = (0.5, 2)
        g = build_hsp([P(0, 0), P(1, 0), P(0.5, 2)])
        assert g.has_edge(0, 2)

    def test_empirical_out_degree(self):
        g = build_hsp(generate_points(200, seed=8))
        assert max(g.out_degree(i) for i in range(g.n)) <= 6


class TestThetaGraph:
    def test_two_points(self):
        for k in (3, 6, 8, 13):
            assert build_theta_graph([P(0, 0), P(1, 0.2)], k).edge_set() == {(0, 1), (1, 0)}

    def test_smaller_projection_not_closer_point(self):
        # q = (1, 0.1) and s = (0.95, 0.5) both sit in cone 0 of p
        points = [P(0, 0), P(1, 0.1), P(0.95, 0.5)]
        assert cone_index(1, 0.1, 6) == cone_index(0.95, 0.5, 6) == 0
        g = build_theta_graph(points, 6)
        assert g.has_edge(0, 2)
        assert not g.has_edge(0, 1)
        assert math.hypot(0.95, 0.5) > math.hypot(1, 0.1)

    def test_cone_layout(self):
        assert cone_index(1, 0, 8) == 0
        assert cone_index(0, 1, 8) == 2
        assert cone_index(-1, 0, 8) == 4
        assert cone_index(0, -1, 8) == 6
        # each cone owns its clockwise boundary
        assert cone_index(1, -1, 4) == 0
        assert cone_index(1, 1, 4) == 1

    def test_one_edge_per_nonempty_cone(self, random_points):
        g = build_theta_graph(random_points, 8)
        for i in range(g.n):
            p = random_points[i]
            cones = [
                cone_index(random_points[e.target].x - p.x, random_points[e.target].y - p.y, 8)
                for e in g.out_edges[i]
            ]
            assert len(cones) == len(set(cones))

    def test_rejects_few_cones(self):
        with pytest.raises(ValueError):
            build_theta_graph([P(0, 0), P(1, 0)], 2)

    def test_stretch_bound(self):
        assert theta_graph_stretch_bound(6) == math.inf
        assert theta_graph_stretch_bound(5) == math.inf
        assert math.isfinite(theta_graph_stretch_bound(7))
        assert theta_graph_stretch_bound(8) == pytest.approx(1 / (1 - 2 * math.sin(math.pi / 8)))


class TestPointArrays:
    def test_random_points_are_distinct(self, random_points):
        arr = np.array([p.as_tuple() for p in random_points])
        assert np.unique(arr, axis=0).shape[0] == len(random_points)
