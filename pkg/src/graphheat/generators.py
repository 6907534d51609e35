"""Built-in graph families and seeded random graphs.

Deterministic families carry unit data (b = 1, m = 1, c = 0).  Random
generators draw from ``random.Random(seed)`` in a fixed order (edges, then
measures, then killing terms), so a given spec reproduces the same graph on
every run and platform.
"""

from __future__ import annotations

import random

from .graphs import ProceduralGraph, WeightedGraph

DEFAULT_WEIGHT_RANGE = (0.1, 2.0)
DEFAULT_MEASURE_RANGE = (0.5, 2.0)


def path_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(n, [(i, i + 1, weight) for i in range(n - 1)])


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n, weight) for i in range(n)]
    return WeightedGraph(n, edges)


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    edges = [(u, v, weight) for u in range(n) for v in range(u + 1, n)]
    return WeightedGraph(n, edges)


def star_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    """Center 0 joined to leaves 1..n-1."""
    return WeightedGraph(n, [(0, v, weight) for v in range(1, n)])


def random_graph(n: int, p: float, seed: int,
                 wmin: float = DEFAULT_WEIGHT_RANGE[0], wmax: float = DEFAULT_WEIGHT_RANGE[1],
                 mmin: float = DEFAULT_MEASURE_RANGE[0], mmax: float = DEFAULT_MEASURE_RANGE[1],
                 random_killing: bool = False) -> WeightedGraph:
    """Each pair becomes an edge with probability p, with uniform weights."""
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, rng.uniform(wmin, wmax)))
    measure = [rng.uniform(mmin, mmax) for _ in range(n)]
    killing = [rng.uniform(0.0, 1.0) for _ in range(n)] if random_killing else 0.0
    return WeightedGraph(n, edges, measure, killing)


def random_connected_graph(n: int, p: float, seed: int,
                           wmin: float = DEFAULT_WEIGHT_RANGE[0], wmax: float = DEFAULT_WEIGHT_RANGE[1],
                           mmin: float = DEFAULT_MEASURE_RANGE[0], mmax: float = DEFAULT_MEASURE_RANGE[1],
                           random_killing: bool = False) -> WeightedGraph:
    """Random spanning tree plus independent extra edges with probability p."""
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    present = set()
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        present.add((u, v))
        edges.append((u, v, rng.uniform(wmin, wmax)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in present and rng.random() < p:
                edges.append((u, v, rng.uniform(wmin, wmax)))
    measure = [rng.uniform(mmin, mmax) for _ in range(n)]
    killing = [rng.uniform(0.0, 1.0) for _ in range(n)] if random_killing else 0.0
    return WeightedGraph(n, edges, measure, killing)


def integer_line(weight: float = 1.0) -> ProceduralGraph:
    """The two-sided infinite path on the integers, unit measure."""
    return ProceduralGraph(lambda x: [(x - 1, weight), (x + 1, weight)], max_degree=2)


def from_spec(spec: str) -> WeightedGraph:
    """Build a graph from a compact text spec.

    Accepted forms: ``path:n``, ``cycle:n``, ``complete:n``, ``star:n``, and
    ``random:n:p:seed[:wmin:wmax:mmin:mmax][:c]`` where the trailing ``:c``
    switches on uniform killing terms in [0, 1].
    """
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind in ("path", "cycle", "complete", "star"):
            if len(parts) != 2:
                raise ValueError(f"{kind} spec takes exactly one argument")
            n = int(parts[1])
            builder = {"path": path_graph, "cycle": cycle_graph,
                       "complete": complete_graph, "star": star_graph}[kind]
            return builder(n)
        if kind == "random":
            args = parts[1:]
            random_killing = False
            if args and args[-1] == "c":
                random_killing = True
                args = args[:-1]
            if len(args) == 3:
                n, p, seed = int(args[0]), float(args[1]), int(args[2])
                return random_graph(n, p, seed, random_killing=random_killing)
            if len(args) == 7:
                n, p, seed = int(args[0]), float(args[1]), int(args[2])
                wmin, wmax, mmin, mmax = (float(a) for a in args[3:7])
                return random_graph(n, p, seed, wmin, wmax, mmin, mmax,
                                    random_killing=random_killing)
            raise ValueError("random spec is random:n:p:seed[:wmin:wmax:mmin:mmax][:c]")
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad generator spec {spec!r}: {exc}") from None
    raise ValueError(f"bad generator spec {spec!r}: unknown family {kind!r}")
