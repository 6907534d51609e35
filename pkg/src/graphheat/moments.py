"""Moment matrix elements <1_x, L^n 1_y> and their first nonzero order.

Because :meth:`LaplacianOperator.apply` tracks support exactly, a moment is
the float 0.0 precisely when no walk of length n joins x and y, so the first
nonzero order is detected by exact comparison rather than a threshold.  On
connected graphs it coincides with the hop distance, and the moment at that
order has sign (-1)^distance: every shortest-walk product contributes the
same sign, so no cancellation can occur at the critical order.

``path_sum_moment`` recomputes a moment by brute-force enumeration of the
contributing vertex sequences; it is an independent cross-check for the
sparse-application route, intended for small n on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .operators import LaplacianOperator, WeightedVector, _exact_sum


@dataclass(frozen=True)
class UnknownAbove:
    """Order search exhausted: every moment up to and including n_max is exactly zero."""

    n_max: int


@dataclass(frozen=True)
class MomentTable:
    """Moments of one vertex pair for n = 0..N, plus the first nonzero order."""

    x: int
    y: int
    values: tuple[float, ...]
    order: "int | UnknownAbove"


class EnumerationBudgetError(RuntimeError):
    """path_sum_moment visited more sequences than its budget allows."""


def moment(op: LaplacianOperator, x, y, n: int) -> float:
    """<1_x, L^n 1_y> by n sparse applications; exactly 0.0 below the hop distance."""
    if n < 0:
        raise ValueError("moment order must be non-negative")
    g = op.graph
    g._check(x)
    vec = WeightedVector.basis(g, y)
    for _ in range(n):
        vec = op.apply(vec)
    return g.measure(x) * vec[x]


def moment_table(op: LaplacianOperator, x, y, n_max: int) -> MomentTable:
    """Moments for n = 0..n_max in one pass over the vector stream."""
    if n_max < 0:
        raise ValueError("moment order must be non-negative")
    g = op.graph
    g._check(x)
    vec = WeightedVector.basis(g, y)
    values = []
    for n in range(n_max + 1):
        values.append(g.measure(x) * vec[x])
        if n < n_max:
            vec = op.apply(vec)
    order: int | UnknownAbove = UnknownAbove(n_max)
    for n, v in enumerate(values):
        if v != 0.0:
            order = n
            break
    return MomentTable(x, y, tuple(values), order)


def leading_moment_order(op: LaplacianOperator, x, y, n_max: int):
    """Smallest n <= n_max with a nonzero moment, else ``UnknownAbove(n_max)``."""
    if n_max < 0:
        raise ValueError("search bound must be non-negative")
    g = op.graph
    g._check(x)
    vec = WeightedVector.basis(g, y)
    for n in range(n_max + 1):
        if vec[x] != 0.0:
            return n
        if n < n_max:
            vec = op.apply(vec)
    return UnknownAbove(n_max)


def first_nonzero_moments(op: LaplacianOperator, y, n_max: int) -> dict:
    """For every vertex reached from y within n_max applications, the first
    order n with <1_v, L^n 1_y> nonzero together with that moment's value.

    One vector stream serves all target vertices at once, which is the cheap
    way to compare moment orders against BFS distances over whole graphs.
    """
    g = op.graph
    vec = WeightedVector.basis(g, y)
    out: dict = {}
    for n in range(n_max + 1):
        for v, val in vec.items():
            if v not in out:
                out[v] = (n, g.measure(v) * val)
        if g.is_finite and len(out) == g.n:
            break
        if n < n_max:
            vec = op.apply(vec)
    return out


def path_sum_moment(op: LaplacianOperator, x, y, n: int, budget: int = 10_000_000) -> float:
    """Moment by explicit enumeration over contributing vertex sequences.

    Sums e(x, x1) e(x1, x2) ... e(x_{n-1}, y) / (m(x1) ... m(x_{n-1})) over
    all sequences whose consecutive vertices are equal or adjacent, where
    e(u, v) = <1_u, L 1_v>; all other sequences contribute zero.  Exponential
    in n: each examined partial sequence counts against ``budget``.
    """
    if n < 1:
        raise ValueError("path sums are defined for order >= 1")
    g = op.graph
    g._check(x)
    g._check(y)
    terms: list[float] = []
    visited = 0

    def candidates(v):
        ev = op.matrix_element(v, v)
        if ev != 0.0:
            yield v, ev
        for nbr, w in g.neighbors(v):
            yield nbr, -w

    def extend(v, prod, slots):
        nonlocal visited
        if slots == 0:
            e_last = op.matrix_element(v, y)
            if e_last != 0.0:
                terms.append(prod * e_last)
            return
        for nxt, e in candidates(v):
            visited += 1
            if visited > budget:
                raise EnumerationBudgetError(
                    f"path enumeration exceeded the budget of {budget} sequences")
            extend(nxt, prod * e / g.measure(nxt), slots - 1)

    extend(x, 1.0, n - 1)
    return _exact_sum(terms)
