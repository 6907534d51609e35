"""Plain-text graph files.

Format (whitespace-separated, UTF-8, ``#`` starts a comment line)::

    graph <n>
    v <id> <m> <c>      one line per vertex, m > 0, c >= 0
    e <id1> <id2> <b>   undirected, b > 0, id1 != id2, each pair once

Vertex and edge lines may appear in any order after the header.  Parsing is
strict: duplicate vertices or edges, edges touching undeclared vertices, and
non-finite numbers are rejected with line-numbered diagnostics.
"""

from __future__ import annotations

import math

from .graphs import WeightedGraph


class GraphFormatError(ValueError):
    """Malformed graph file; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _number(token: str, line_no: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphFormatError(line_no, f"{what} is not a number: {token!r}") from None
    if not math.isfinite(value):
        raise GraphFormatError(line_no, f"{what} must be finite, got {token!r}")
    return value


def _integer(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(line_no, f"{what} is not an integer: {token!r}") from None


def parse_graph(text: str) -> WeightedGraph:
    """Parse graph file content into a validated :class:`WeightedGraph`."""
    n = None
    header_line = 0
    vertices: dict[int, tuple[float, float]] = {}
    edges: dict[tuple[int, int], float] = {}
    edge_lines: dict[tuple[int, int], int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "graph":
            if n is not None:
                raise GraphFormatError(line_no, "duplicate 'graph' header")
            if len(fields) != 2:
                raise GraphFormatError(line_no, "header must be 'graph <n>'")
            n = _integer(fields[1], line_no, "vertex count")
            if n < 0:
                raise GraphFormatError(line_no, f"vertex count must be non-negative, got {n}")
            header_line = line_no
            continue
        if n is None:
            raise GraphFormatError(line_no, "'graph <n>' header must come first")
        if kind == "v":
            if len(fields) != 4:
                raise GraphFormatError(line_no, "vertex line must be 'v <id> <m> <c>'")
            vid = _integer(fields[1], line_no, "vertex id")
            if not (0 <= vid < n):
                raise GraphFormatError(line_no, f"vertex id {vid} out of range 0..{n - 1}")
            if vid in vertices:
                raise GraphFormatError(line_no, f"duplicate vertex {vid}")
            m = _number(fields[2], line_no, "measure")
            if m <= 0:
                raise GraphFormatError(line_no, f"measure must be positive, got {m}")
            c = _number(fields[3], line_no, "killing term")
            if c < 0:
                raise GraphFormatError(line_no, f"killing term must be non-negative, got {c}")
            vertices[vid] = (m, c)
        elif kind == "e":
            if len(fields) != 4:
                raise GraphFormatError(line_no, "edge line must be 'e <id1> <id2> <b>'")
            u = _integer(fields[1], line_no, "vertex id")
            v = _integer(fields[2], line_no, "vertex id")
            if u == v:
                raise GraphFormatError(line_no, f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(line_no, f"edge ({u}, {v}) out of range 0..{n - 1}")
            w = _number(fields[3], line_no, "edge weight")
            if w <= 0:
                raise GraphFormatError(line_no, f"edge weight must be positive, got {w}")
            key = (min(u, v), max(u, v))
            if key in edges:
                raise GraphFormatError(line_no, f"duplicate edge ({u}, {v})")
            edges[key] = w
            edge_lines[key] = line_no
        else:
            raise GraphFormatError(line_no, f"unknown line type {kind!r}")
    if n is None:
        raise GraphFormatError(1, "missing 'graph <n>' header")
    for (u, v), line_no in edge_lines.items():
        if u not in vertices or v not in vertices:
            missing = u if u not in vertices else v
            raise GraphFormatError(line_no, f"edge ({u}, {v}) references undeclared vertex {missing}")
    for vid in range(n):
        if vid not in vertices:
            raise GraphFormatError(header_line, f"vertex {vid} is never declared")
    measure = [vertices[v][0] for v in range(n)]
    killing = [vertices[v][1] for v in range(n)]
    return WeightedGraph(n, [(u, v, w) for (u, v), w in edges.items()], measure, killing)


def load_graph(path) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def dump_graph(g: WeightedGraph) -> str:
    """Serialize a finite graph; round-trips exactly through :func:`parse_graph`."""
    lines = [f"graph {g.n}"]
    for v in g.vertices:
        lines.append(f"v {v} {g.measure(v)!r} {g.killing(v)!r}")
    for u, v, w in g.edges():
        lines.append(f"e {u} {v} {w!r}")
    return "\n".join(lines) + "\n"


def save_graph(g: WeightedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(g))
