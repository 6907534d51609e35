"""Certification of the short-time inequalities and limits.

Every check here verifies a mathematical theorem about the operator, so on
valid inputs every report must pass; a failing report signals an
implementation bug, which is what makes these checks a usable test oracle.

Reports compare a left-hand side (an approximation error measured with the
most accurate evaluation route available) against an explicitly computed
right-hand side.  ``passed`` allows the relative slack 1e-9 plus an absolute
floor of 1e-300, covering evaluation round-off without weakening the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import INFINITE, combinatorial_distance
from .moments import UnknownAbove, moment, moment_table
from .operators import LaplacianOperator, WeightedVector, _exact_sum, inner
from .spectral import (ScalarFunction, SpectralDecomposition, _resolve,
                       _cached_decomposition, functional_calculus,
                       heat_element, wave_element)

PASS_SLACK_REL = 1e-9
PASS_SLACK_ABS = 1e-300
UNDERFLOW_FLOOR = 1e-280


@dataclass(frozen=True)
class BoundReport:
    """One inequality instance: |approximation error| against the bound value."""

    which: str
    x: "int | None"
    y: "int | None"
    t: "float | None"
    n: int
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs * (1 + PASS_SLACK_REL) + PASS_SLACK_ABS


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares slope of log |element| against log t on a geometric grid."""

    x: int
    y: int
    group: str
    t_grid: tuple[float, ...]
    log_values: tuple[float, ...]
    slope: float
    intercept: float
    max_residual: float


@dataclass(frozen=True)
class VanishingOrderReport:
    """Witness that |element| <= constant * t^(n+1) once all moments up to n vanish."""

    x: int
    y: int
    n: int
    constant: float
    samples: tuple[tuple[float, float, float, float], ...]  # (t, |heat|, |wave|, bound)

    @property
    def passed(self) -> bool:
        tol = 1 + PASS_SLACK_REL
        return all(h <= b * tol + PASS_SLACK_ABS and w <= b * tol + PASS_SLACK_ABS
                   for _, h, w, b in self.samples)


def _graph_of(source):
    graph, _ = _resolve(source)
    return graph


def _vector_moments(op, f, g, n_max):
    """<f, L^n g> for n = 0..n_max via one stream of sparse applications."""
    values = []
    cur = g
    for n in range(n_max + 1):
        values.append(inner(f, cur))
        if n < n_max:
            cur = op.apply(cur)
    return values


def taylor_bound(dec: SpectralDecomposition, func: ScalarFunction,
                 f: WeightedVector, g: WeightedVector, order: int) -> BoundReport:
    """Generic Taylor-remainder bound for the functional calculus.

    lhs: |<f, func(L) g>  -  sum_{n<=order} func^(n)(0)/n! <f, L^n g>|, the
    calculus value coming from the eigenpairs and the moments from sparse
    applications (two independent routes).
    rhs: bound * (<f, L^(order+1) f> + <g, L^(order+1) g>) / (2 (order+1)!).
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if len(func.derivatives_at_zero) < order + 1:
        raise ValueError(f"need derivatives up to order {order}, got "
                         f"{len(func.derivatives_at_zero)} values")
    op = LaplacianOperator(dec.graph)
    exact = functional_calculus(dec, func, f, g)
    fg_moments = _vector_moments(op, f, g, order + 1)
    partial = _exact_sum([func.derivatives_at_zero[n] / math.factorial(n) * fg_moments[n]
                          for n in range(order + 1)])
    ff = _vector_moments(op, f, f, order + 1)[order + 1]
    gg = _vector_moments(op, g, g, order + 1)[order + 1]
    lhs = abs(exact - partial)
    rhs = func.next_derivative_bound / math.factorial(order + 1) * 0.5 * (ff.real + gg.real)
    return BoundReport("taylor", None, None, None, order, lhs, rhs)


def _require_order_at_least(op, x, y, n):
    values = moment_table(op, x, y, n).values
    for k in range(n):
        if values[k] != 0.0:
            raise ValueError(
                f"bound requires every moment below n to vanish; moment {k} is {values[k]}")
    return values[n]


def semigroup_bound(source, x, y, t, n: int) -> BoundReport:
    """Short-time bound for the heat semigroup at order n <= first nonzero order.

    lhs: |<1_x, e^{-tL} 1_y> - (-t)^n <1_x, L^n 1_y> / n!|
    rhs: t^(n+1) (<1_x, L^(n+1) 1_x> + <1_y, L^(n+1) 1_y>) / (2 (n+1)!)
    """
    graph = _graph_of(source)
    op = LaplacianOperator(graph)
    m_n = _require_order_at_least(op, x, y, n)
    lead = (-t) ** n * m_n / math.factorial(n)
    lhs = abs(heat_element(source, x, y, t) - lead)
    rhs = t ** (n + 1) * (moment(op, x, x, n + 1) + moment(op, y, y, n + 1)) \
        / (2 * math.factorial(n + 1))
    return BoundReport("semigroup", x, y, t, n, lhs, rhs)


def unitary_bound(source, x, y, t, n: int) -> BoundReport:
    """Short-time bound for the unitary group; same right-hand side as the semigroup."""
    graph = _graph_of(source)
    op = LaplacianOperator(graph)
    m_n = _require_order_at_least(op, x, y, n)
    lead = (-1j * t) ** n * m_n / math.factorial(n)
    lhs = abs(wave_element(source, x, y, t) - lead)
    rhs = t ** (n + 1) * (moment(op, x, x, n + 1) + moment(op, y, y, n + 1)) \
        / (2 * math.factorial(n + 1))
    return BoundReport("unitary", x, y, t, n, lhs, rhs)


def leading_term_check(source, x, y, t, cutoff=None) -> tuple[BoundReport, BoundReport]:
    """Leading-order estimates at d = hop distance, for heat and wave.

    heat lhs: |<1_x, e^{-tL} 1_y>  - t^d |<1_x, L^d 1_y>| / d!|
    wave lhs: ||<1_x, e^{-itL} 1_y>| - t^d |<1_x, L^d 1_y>| / d!|
    shared rhs: t^(d+1) (<1_x, L^(d+1) 1_x> + <1_y, L^(d+1) 1_y>) / (2 (d+1)!)
    """
    reports = pair_verification_reports(source, x, y, [t], cutoff=cutoff,
                                        which=("heat_leading", "wave_leading"))
    return reports[0], reports[1]


def pair_verification_reports(source, x, y, ts, cutoff=None,
                              which=("heat_leading", "wave_leading", "semigroup", "unitary"),
                              method="auto"):
    """Bound reports for one vertex pair across a t grid, sharing moment work.

    The semigroup/unitary reports run at the pair's hop distance d (their
    largest admissible order).  Raises for disconnected pairs; for those use
    :func:`vanishing_order_check`.  Overriding ``method`` with ``eigen`` at
    small t measures that route's cancellation rather than the theorems.
    """
    graph = _graph_of(source)
    op = LaplacianOperator(graph)
    d = combinatorial_distance(graph, x, y, cutoff=cutoff)
    if d == INFINITE:
        raise ValueError(f"vertices {x} and {y} are not connected; the leading-order "
                         "estimate needs a finite hop distance")
    one_x = WeightedVector.basis(graph, x)
    one_y = WeightedVector.basis(graph, y)
    cur = one_y
    m_d = 0.0
    for k in range(d + 1):
        if k == d:
            m_d = graph.measure(x) * cur[x]
        cur = op.apply(cur)
    m_yy = inner(one_y, cur)
    if m_d == 0.0:
        raise ArithmeticError(f"moment at the hop distance {d} vanished for pair ({x}, {y}); "
                              "this contradicts the graph structure and signals a bug")
    cur = one_x
    for _ in range(d + 1):
        cur = op.apply(cur)
    m_xx = inner(one_x, cur)
    lead_coef = abs(m_d) / math.factorial(d)
    bound_coef = (m_xx + m_yy) / (2 * math.factorial(d + 1))
    reports = []
    for t in ts:
        h = heat_element(source, x, y, t, method=method)
        w = wave_element(source, x, y, t, method=method)
        lead = t ** d * lead_coef
        rhs = t ** (d + 1) * bound_coef
        for tag in which:
            if tag == "heat_leading":
                reports.append(BoundReport(tag, x, y, t, d, abs(h - lead), rhs))
            elif tag == "wave_leading":
                reports.append(BoundReport(tag, x, y, t, d, abs(abs(w) - lead), rhs))
            elif tag == "semigroup":
                signed = (-t) ** d * m_d / math.factorial(d)
                reports.append(BoundReport(tag, x, y, t, d, abs(h - signed), rhs))
            elif tag == "unitary":
                signed = (-1j * t) ** d * m_d / math.factorial(d)
                reports.append(BoundReport(tag, x, y, t, d, abs(w - signed), rhs))
            else:
                raise ValueError(f"unknown report tag {tag!r}")
    return reports


def leading_exponent_fit(source, x, y, t0: float = 1e-3, ratio: float = 0.1,
                         count: int = 4, group: str = "heat") -> ExponentFit:
    """Fit the exponent of |element| ~ const * t^slope on a geometric grid.

    Forces the series route (the grid lives where eigen evaluation cancels),
    so on finite graphs t0 * lambda_max must stay <= 1/2.  The slope estimates
    the hop distance; with the series evaluator the fit bias is O(t0).
    """
    if t0 <= 0:
        raise ValueError("t0 must be positive")
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie strictly between 0 and 1")
    if count < 3:
        raise ValueError("need at least 3 grid points")
    if group not in ("heat", "wave"):
        raise ValueError(f"unknown group {group!r}; expected 'heat' or 'wave'")
    graph, dec = _resolve(source)
    if graph.is_finite:
        dec = dec or _cached_decomposition(graph)
        if t0 * dec.largest_eigenvalue > 0.5:
            raise ValueError(f"t0={t0} is too large for the series route: "
                             f"t0 * lambda_max = {t0 * dec.largest_eigenvalue:.6g} > 1/2")
        source = dec
    evaluate = heat_element if group == "heat" else wave_element
    grid = [t0 * ratio ** k for k in range(count)]
    logs = []
    for tk in grid:
        value = abs(evaluate(source, x, y, tk, method="series"))
        if value <= UNDERFLOW_FLOOR:
            raise ArithmeticError(
                f"element underflowed at t={tk} after {len(logs)} of {count} grid points "
                f"(|value|={value}); collected grid {grid[:len(logs)]}")
        logs.append(math.log(value))
    xs = np.log(grid)
    ys = np.array(logs)
    slope, intercept = np.polyfit(xs, ys, 1)
    residuals = np.abs(ys - (slope * xs + intercept))
    return ExponentFit(x, y, group, tuple(grid), tuple(logs),
                       float(slope), float(intercept), float(np.max(residuals)))


def vanishing_order_check(source, x, y, n: int, t_samples,
                          method: str = "series") -> VanishingOrderReport:
    """Witness for faster-than-polynomial decay when moments vanish through n.

    Requires every moment of the pair up to n to be exactly zero (e.g. a pair
    in different components).  Verifies, at each sample time, that both
    |heat| and |wave| elements stay below constant * t^(n+1) with
    constant = (<1_x, L^(n+1) 1_x> + <1_y, L^(n+1) 1_y>) / (2 (n+1)!).

    Under the series route the elements across components are exactly 0.0;
    under eigen they only vanish to round-off, so that route is informative
    about magnitudes, not exactness.
    """
    graph = _graph_of(source)
    op = LaplacianOperator(graph)
    order = moment_table(op, x, y, n).order
    if not isinstance(order, UnknownAbove):
        raise ValueError(f"pair ({x}, {y}) has a nonzero moment at order {order} <= {n}; "
                         "the vanishing-order witness does not apply")
    constant = (moment(op, x, x, n + 1) + moment(op, y, y, n + 1)) / (2 * math.factorial(n + 1))
    samples = []
    for t in t_samples:
        h = abs(heat_element(source, x, y, t, method=method))
        w = abs(wave_element(source, x, y, t, method=method))
        samples.append((t, h, w, constant * t ** (n + 1)))
    return VanishingOrderReport(x, y, n, constant, tuple(samples))


def varadhan_diagnostic(source, x, y, t_grid):
    """The sequence (t, t * log <1_x, e^{-tL} 1_y>) on a positive grid.

    On manifolds this quantity tends to minus half the squared geodesic
    distance; on graphs the element behaves like const * t^d, so
    t * log(element) -> 0.  The returned magnitudes shrink accordingly.
    """
    out = []
    for t in t_grid:
        if t <= 0:
            raise ValueError("diagnostic needs strictly positive times")
        p = heat_element(source, x, y, t)
        if p <= 0:
            raise ValueError(f"heat element is {p} at t={t}; connected pairs give "
                             "positive values for positive times")
        out.append((t, t * math.log(p)))
    return tuple(out)
