"""Pydantic models for directed geometric graphs and complete-graph edge ranks."""

from __future__ import annotations

import math
from collections.abc import Iterator
from functools import cached_property
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.sparse import csr_matrix

from src.models.geometry import Point2D


class Edge(NamedTuple):
    target: int
    length: float


def euclidean(ax: float, ay: float, bx: float, by: float) -> float:
    """Euclidean distance with the same arithmetic as the vectorized kernels."""
    dx = bx - ax
    dy = by - ay
    return math.sqrt(dx * dx + dy * dy)


class DirectedGeometricGraph(BaseModel):
    """Vertex list plus directed adjacency weighted by Euclidean length.

    Each adjacency list is sorted by ascending length, ties by target index.
    """

    model_config = ConfigDict(frozen=True)

    vertices: list[Point2D]
    out_edges: list[list[Edge]]
    kind: str = "custom"

    @model_validator(mode="after")
    def _check_integrity(self) -> DirectedGeometricGraph:
        n = len(self.vertices)
        if len(self.out_edges) != n:
            raise ValueError(f"out_edges has {len(self.out_edges)} lists for {n} vertices")
        for i, edges in enumerate(self.out_edges):
            seen: set[int] = set()
            prev: tuple[float, int] | None = None
            p = self.vertices[i]
            for e in edges:
                if not 0 <= e.target < n:
                    raise ValueError(f"edge {i}->{e.target} points outside the vertex list")
                if e.target == i:
                    raise ValueError(f"self-loop at vertex {i}")
                if e.target in seen:
                    raise ValueError(f"duplicate edge {i}->{e.target}")
                seen.add(e.target)
                q = self.vertices[e.target]
                if e.length != euclidean(p.x, p.y, q.x, q.y):
                    raise ValueError(f"edge {i}->{e.target} length does not match its endpoints")
                key = (e.length, e.target)
                if prev is not None and key < prev:
                    raise ValueError(f"adjacency list of vertex {i} is not sorted")
                prev = key
        return self

    @classmethod
    def from_targets(
        cls,
        vertices: list[Point2D],
        targets: list[list[int]],
        kind: str = "custom",
    ) -> DirectedGeometricGraph:
        """Build a graph from per-vertex target lists, computing and sorting lengths."""
        out: list[list[Edge]] = []
        for i, ts in enumerate(targets):
            p = vertices[i]
            edges = [
                Edge(j, euclidean(p.x, p.y, vertices[j].x, vertices[j].y)) for j in ts
            ]
            edges.sort(key=lambda e: (e.length, e.target))
            out.append(edges)
        return cls(vertices=vertices, out_edges=out, kind=kind)

    # ── Queries ──────────────────────────────────────────────────

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(len(es) for es in self.out_edges)

    def edges(self) -> Iterator[tuple[int, int, float]]:
        for i, es in enumerate(self.out_edges):
            for e in es:
                yield i, e.target, e.length

    def edge_set(self) -> set[tuple[int, int]]:
        return {(i, j) for i, j, _ in self.edges()}

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edge_lookup

    def out_degree(self, i: int) -> int:
        return len(self.out_edges[i])

    @cached_property
    def edge_lookup(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edge_set())

    @cached_property
    def coords(self) -> np.ndarray:
        """(n, 2) float64 array of vertex coordinates."""
        return np.array([[v.x, v.y] for v in self.vertices], dtype=np.float64).reshape(-1, 2)

    def to_csr(self) -> csr_matrix:
        """Sparse weighted adjacency matrix (row = source)."""
        rows, cols, data = [], [], []
        for i, j, w in self.edges():
            rows.append(i)
            cols.append(j)
            data.append(w)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n), dtype=np.float64)

    def same_vertices(self, other: DirectedGeometricGraph) -> bool:
        return self.vertices == other.vertices


class RankedEdge(NamedTuple):
    rank: int
    u: int
    v: int
    length: float


class EdgeRankIndex(BaseModel):
    """Complete-graph edges sorted by length, ranks 1..n(n−1)/2."""

    model_config = ConfigDict(frozen=True)

    edges: list[RankedEdge] = Field(default_factory=list)
    has_ties: bool = False

    @property
    def lengths(self) -> list[float]:
        return [e.length for e in self.edges]

    def rank_of(self, u: int, v: int) -> int:
        a, b = (u, v) if u < v else (v, u)
        for e in self.edges:
            if e.u == a and e.v == b:
                return e.rank
        raise KeyError((u, v))
