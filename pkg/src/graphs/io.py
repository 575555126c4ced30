"""Plain-text point-set and graph files.

Point files hold one ``x y`` per line; ``#`` starts a comment and blank
lines are ignored. Graph files start with ``n m``, followed by n vertex
lines ``x y`` and m edge lines ``i j length`` with 0-based indices.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from src.logger import get_logger
from src.models.geometry import Point2D
from src.models.graph import DirectedGeometricGraph, Edge, euclidean

logger = get_logger(__name__)


class PointFormatError(ValueError):
    """Raised for malformed point-set files."""


class GraphFormatError(ValueError):
    """Raised for malformed graph files."""


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    return lines


def _parse_point(line: str, lineno: int, error: type[ValueError]) -> Point2D:
    parts = line.split()
    if len(parts) != 2:
        raise error(f"line {lineno}: expected 'x y', got {line!r}")
    try:
        return Point2D(x=float(parts[0]), y=float(parts[1]))
    except (ValueError, ValidationError) as exc:
        raise error(f"line {lineno}: invalid coordinates {line!r}") from exc


def parse_points(text: str) -> list[Point2D]:
    return [_parse_point(line, no, PointFormatError) for no, line in _content_lines(text)]


def format_points(points: Sequence[Point2D]) -> str:
    return "".join(f"{_fmt(p.x)} {_fmt(p.y)}\n" for p in points)


def read_points(path: str | Path) -> list[Point2D]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Point file not found: {path}")
    points = parse_points(path.read_text(encoding="utf-8"))
    logger.debug("Points read", path=str(path), n=len(points))
    return points


def write_points(points: Sequence[Point2D], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_points(points), encoding="utf-8")
    return path


def format_graph(graph: DirectedGeometricGraph) -> str:
    lines = [f"{graph.n} {graph.edge_count}"]
    lines.extend(f"{_fmt(v.x)} {_fmt(v.y)}" for v in graph.vertices)
    lines.extend(f"{i} {j} {_fmt(length)}" for i, j, length in graph.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> DirectedGeometricGraph:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty graph file")
    header_no, header = lines[0]
    try:
        n, m = (int(tok) for tok in header.split())
    except ValueError as exc:
        raise GraphFormatError(f"line {header_no}: expected 'n m', got {header!r}") from exc
    if len(lines) != 1 + n + m:
        raise GraphFormatError(f"expected {n} vertex and {m} edge lines, got {len(lines) - 1}")

    vertices = [_parse_point(line, no, GraphFormatError) for no, line in lines[1 : 1 + n]]
    out: list[list[Edge]] = [[] for _ in range(n)]
    for no, line in lines[1 + n :]:
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"line {no}: expected 'i j length', got {line!r}")
        try:
            i, j, stored = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise GraphFormatError(f"line {no}: invalid edge {line!r}") from exc
        if not (0 <= i < n and 0 <= j < n):
            raise GraphFormatError(f"line {no}: vertex index out of range")
        a, b = vertices[i], vertices[j]
        length = euclidean(a.x, a.y, b.x, b.y)
        if not math.isclose(stored, length, rel_tol=1e-12, abs_tol=1e-15):
            raise GraphFormatError(
                f"line {no}: stored length {stored!r} differs from |{i}{j}| = {length!r}"
            )
        out[i].append(Edge(j, length))
    for es in out:
        es.sort(key=lambda e: (e.length, e.target))
    try:
        return DirectedGeometricGraph(vertices=vertices, out_edges=out, kind="file")
    except ValidationError as exc:
        raise GraphFormatError(str(exc)) from exc


def read_graph(path: str | Path) -> DirectedGeometricGraph:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph file not found: {path}")
    graph = parse_graph(path.read_text(encoding="utf-8"))
    logger.debug("Graph read", path=str(path), n=graph.n, edges=graph.edge_count)
    return graph


def write_graph(graph: DirectedGeometricGraph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph(graph), encoding="utf-8")
    return path
