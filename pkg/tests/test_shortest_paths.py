"""Tests for the shortest-path engines, checked against networkx."""

from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest

from src.analysis.shortest_paths import (
    all_pairs_shortest_paths,
    euclidean_matrix,
    shortest_path_lengths_from,
)
from src.experiments.points import generate_points, point_rng
from src.graphs.builders import build_glt
from src.models.geometry import SpannerParams
from src.models.graph import DirectedGeometricGraph


def _random_digraph(n: int, density: float, seed: int) -> DirectedGeometricGraph:
    rng = point_rng(seed, stream=99)
    points = generate_points(n, seed)
    targets = [
        [j for j in range(n) if j != i and rng.random() < density] for i in range(n)
    ]
    return DirectedGeometricGraph.from_targets(points, targets)


def _to_networkx(graph: DirectedGeometricGraph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(graph.n))
    g.add_weighted_edges_from(graph.edges())
    return g


class TestSingleSource:
    def test_collinear_glt(self, collinear_points, params):
        g = build_glt(collinear_points, params)
        assert shortest_path_lengths_from(g, 0) == [0.0, 1.0, 3.0]

    def test_source_to_itself(self, random_points, params):
        g = build_glt(random_points, params)
        assert shortest_path_lengths_from(g, 7)[7] == 0.0

    def test_unreachable_is_inf(self):
        g = _random_digraph(5, 0.0, seed=1)
        dist = shortest_path_lengths_from(g, 0)
        assert dist[0] == 0.0
        assert all(math.isinf(d) for d in dist[1:])

    def test_invalid_source(self, collinear_points, params):
        with pytest.raises(IndexError):
            shortest_path_lengths_from(build_glt(collinear_points, params), 3)

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_matches_bellman_ford(self, seed):
        g = _random_digraph(25, 0.15, seed)
        oracle = _to_networkx(g)
        for source in (0, 5, 24):
            expected = nx.single_source_bellman_ford_path_length(oracle, source)
            got = shortest_path_lengths_from(g, source)
            for v in range(g.n):
                if v in expected:
                    assert got[v] == pytest.approx(expected[v], rel=1e-12)
                else:
                    assert math.isinf(got[v])

    def test_edge_cap(self, collinear_points, params):
        g = build_glt(collinear_points, params)
        # with the cap below 2 the a→b edge disappears
        assert math.isinf(shortest_path_lengths_from(g, 0, edge_cap=1.5)[2])
        assert shortest_path_lengths_from(g, 0, edge_cap=2.0)[2] == 3.0

    def test_capped_matches_filtered_oracle(self):
        g = _random_digraph(20, 0.3, seed=4)
        cap = 0.4
        oracle = nx.DiGraph()
        oracle.add_nodes_from(range(g.n))
        oracle.add_weighted_edges_from((i, j, w) for i, j, w in g.edges() if w <= cap)
        expected = nx.single_source_bellman_ford_path_length(oracle, 0)
        got = shortest_path_lengths_from(g, 0, edge_cap=cap)
        for v in range(g.n):
            assert got[v] == pytest.approx(expected.get(v, math.inf), rel=1e-12)

    def test_stop_at_settles_target(self):
        g = _random_digraph(20, 0.3, seed=6)
        full = shortest_path_lengths_from(g, 0)
        early = shortest_path_lengths_from(g, 0, stop_at=13)
        assert early[13] == full[13]


class TestAllPairs:
    def test_matches_single_source(self, random_points, params):
        g = build_glt(random_points, params)
        matrix = all_pairs_shortest_paths(g)
        for source in range(0, g.n, 7):
            np.testing.assert_allclose(
                matrix[source], shortest_path_lengths_from(g, source), rtol=1e-12
            )

    def test_triangle_inequality(self, random_points, params):
        d = all_pairs_shortest_paths(build_glt(random_points, params))
        n = d.shape[0]
        for r in range(n):
            assert np.all(d <= d[:, [r]] + d[[r], :] + 1e-12)
        assert n > 0

    def test_empty_graph(self):
        g = DirectedGeometricGraph(vertices=[], out_edges=[])
        assert all_pairs_shortest_paths(g).shape == (0, 0)

    def test_euclidean_matrix(self):
        coords = np.array([[0.0, 0.0], [3.0, 4.0]])
        m = euclidean_matrix(coords)
        assert m[0, 1] == 5.0 and m[1, 0] == 5.0 and m[0, 0] == 0.0
