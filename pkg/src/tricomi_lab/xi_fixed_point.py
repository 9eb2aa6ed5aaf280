"""The ODE system for xi(t) and its integral reformulation.

The profile xi must satisfy, for t > 0,

    (2 xi' + t xi'') xi / (2 (1 - gamma)) = t^(alpha + 1)
    t xi'^2 - (2 xi' + t xi'') xi / (2 (1 - gamma)) = 0,      xi(0) = 0,

and the second equation integrates to

    2 L int_0^T (T - s) s xi'(s)^2 ds = T xi(T)^2,   L = 3 - 2 gamma.

``apply_T`` discretises the map g -> sqrt((2L/t) int_0^t (t - s) s g'(s)^2 ds)
on a uniform grid.  Functions carry their derivative values explicitly since
the working norm is sup |g'|.

Note that the map is positively homogeneous (T(c g) = |c| T(g)) and commutes
with dilations t -> lambda t, so every c * xi is also a fixed point and the
linearisation at xi has eigenvalue exactly 1 along xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .core import TricomiParams
from .errors import ArgumentError, DomainError, NonContractionError

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

DEFAULT_POINTS = 2049
DEFAULT_TOL = 1e-8


@dataclass
class C1Function:
    grid: np.ndarray
    values: np.ndarray
    derivative_values: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.derivative_values = np.asarray(self.derivative_values, dtype=float)
        if not (self.grid.shape == self.values.shape == self.derivative_values.shape):
            raise ArgumentError("grid, values and derivatives must have equal length")
        if self.grid.size < 3 or self.grid[0] != 0.0:
            raise ArgumentError("grid must start at t = 0 and have >= 3 points")
        d = np.diff(self.grid)
        if np.any(d <= 0) or np.max(np.abs(d - d[0])) > 1e-9 * d[0]:
            raise ArgumentError("grid must be uniform")

    @property
    def dt(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def in_space_x(self) -> bool:
        """g(0) = 0 and finite derivative values."""
        return self.values[0] == 0.0 and bool(np.all(np.isfinite(self.derivative_values)))

    def scaled(self, c: float) -> "C1Function":
        return C1Function(self.grid, c * self.values, c * self.derivative_values)


def uniform_grid(T: float, points: int = DEFAULT_POINTS) -> np.ndarray:
    if not (math.isfinite(T) and T > 0):
        raise DomainError(f"T must be finite and > 0, got {T}")
    if points < 3:
        raise ArgumentError("need at least 3 grid points")
    return np.linspace(0.0, T, points)


def xi_function(params: TricomiParams, T: float, points: int = DEFAULT_POINTS) -> C1Function:
    t = uniform_grid(T, points)
    b = params.beta
    return C1Function(t, t ** b / b, t ** (b - 1.0))


def sup_derivative_gap(g1: C1Function, g2: C1Function) -> float:
    return float(np.max(np.abs(g1.derivative_values - g2.derivative_values)))


def ode_residuals(params: TricomiParams, g: C1Function) -> tuple[float, float]:
    """Max absolute residuals of both ODEs on interior grid points.

    g'' is the centred difference of the stored derivative values.
    """
    if g.grid.size < 5:
        raise ArgumentError("ode_residuals needs at least 5 grid points")
    t = g.grid[1:-1]
    gv = g.values[1:-1]
    gd = g.derivative_values[1:-1]
    gdd = (g.derivative_values[2:] - g.derivative_values[:-2]) / (2.0 * g.dt)
    common = (2.0 * gd + t * gdd) * gv / (2.0 * (1.0 - params.gamma))
    res1 = np.max(np.abs(common - t ** (params.alpha + 1.0)))
    res2 = np.max(np.abs(t * gd * gd - common))
    return float(res1), float(res2)


@dataclass(frozen=True)
class TResult:
    image: C1Function
    clamped: bool  # negative radicand met (and clamped to zero)


def apply_T_checked(params: TricomiParams, g: C1Function) -> TResult:
    """Apply the integral map, returning the clamp diagnostic as well.

    With I(t) = int_0^t (t - s) s h(s) ds, h = g'^2, A = int_0^t s h and
    B = int_0^t s^2 h we have I = t A - B and I' = A, hence

        T(g) = sqrt(2 L I / t),    T(g)' = L B / (t^2 T(g)).

    A and B are accumulated by piecewise-quadratic product integration.  At
    t = 0: T(g) = 0 and T(g)' = |g'(0)| sqrt(L / 3).
    """
    if not g.in_space_x():
        raise DomainError("g must satisfy g(0) = 0 with finite derivative values")
    t = g.grid
    L = params.L
    A, B = kernels.quad_moments(t, g.derivative_values ** 2)
    I = t * A - B
    clamped = bool(np.any(I[1:] < 0))
    I = np.maximum(I, 0.0)
    val = np.zeros_like(t)
    der = np.zeros_like(t)
    val[1:] = np.sqrt(2.0 * L * I[1:] / t[1:])
    der[0] = abs(g.derivative_values[0]) * math.sqrt(L / 3.0)
    pos = val[1:] > 0
    tail = np.zeros(t.size - 1)
    tail[pos] = L * B[1:][pos] / (t[1:][pos] ** 2 * val[1:][pos])
    der[1:] = tail
    return TResult(C1Function(t, val, der), clamped)


def apply_T(params: TricomiParams, g: C1Function) -> C1Function:
    return apply_T_checked(params, g).image


@dataclass
class ContractionReport:
    T_horizon: float
    iterates: int
    sup_derivative_gaps: list[float] = field(default_factory=list)
    fitted_ratio: float = math.nan
    converged: bool = False
    clamped: bool = False

    def to_dict(self) -> dict:
        return {
            "T_horizon": self.T_horizon,
            "iterates": self.iterates,
            "sup_derivative_gaps": list(self.sup_derivative_gaps),
            "fitted_ratio": self.fitted_ratio,
            "converged": self.converged,
            "clamped": self.clamped,
        }


def _fit_ratio(gaps: list[float]) -> float:
    """Geometric-mean ratio of successive gaps over the tail of the sequence."""
    g = np.asarray([x for x in gaps if x > 0], dtype=float)
    if g.size < 3:
        return math.nan
    tail = g[-min(g.size, 10):]
    return float(np.exp(np.mean(np.diff(np.log(tail)))))


def iterate_to_fixed_point(params: TricomiParams, g0: C1Function, T: float | None = None,
                           tol: float = DEFAULT_TOL, max_iter: int = 500,
                           growth_limit: int = 5) -> tuple[C1Function, ContractionReport]:
    """Iterate g <- T(g) until sup |g_{k+1}' - g_k'| < tol.

    Raises NonContractionError when the gap grows ``growth_limit`` times in a
    row.  If ``max_iter`` is reached the report has ``converged=False``.
    """
    if T is not None and abs(g0.grid[-1] - T) > 1e-12 * max(1.0, T):
        raise ArgumentError("g0 grid does not end at T")
    T = float(g0.grid[-1])
    if not g0.in_space_x():
        raise DomainError("g0 must satisfy g0(0) = 0")
    report = ContractionReport(T_horizon=T, iterates=0)
    g = g0
    growth = 0
    for k in range(max_iter + 1):
        res = apply_T_checked(params, g)
        report.clamped |= res.clamped
        gap = sup_derivative_gap(res.image, g)
        report.sup_derivative_gaps.append(gap)
        if gap < tol:
            report.iterates = k
            report.converged = True
            report.fitted_ratio = _fit_ratio(report.sup_derivative_gaps)
            return g, report
        if k >= 1 and gap > report.sup_derivative_gaps[-2]:
            growth += 1
            if growth >= growth_limit:
                report.iterates = k
                report.fitted_ratio = _fit_ratio(report.sup_derivative_gaps)
                raise NonContractionError(
                    f"gap grew {growth_limit} consecutive iterations (T={T})",
                    T=T, report=report,
                )
        else:
            growth = 0
        g = res.image
    report.iterates = max_iter
    report.fitted_ratio = _fit_ratio(report.sup_derivative_gaps)
    return g, report


def continue_fixed_point(params: TricomiParams, g0: C1Function, split: int,
                         tol: float = DEFAULT_TOL, max_iter: int = 500,
                         growth_limit: int = 5):
    """Solve on [0, t_split] first, then on the full grid seeded by the result.

    The second stage keeps the converged head fixed and extends the seed
    with g0 beyond t_split (shifted to join continuously).
    """
    if not (2 < split < g0.grid.size - 1):
        raise ArgumentError("split index must leave >= 3 points on both sides")
    head0 = C1Function(g0.grid[:split + 1], g0.values[:split + 1], g0.derivative_values[:split + 1])
    head, _ = iterate_to_fixed_point(params, head0, tol=tol, max_iter=max_iter,
                                     growth_limit=growth_limit)
    vals = g0.values.copy()
    ders = g0.derivative_values.copy()
    vals[:split + 1] = head.values
    ders[:split + 1] = head.derivative_values
    vals[split + 1:] += head.values[-1] - g0.values[split]
    return iterate_to_fixed_point(params, C1Function(g0.grid, vals, ders), tol=tol,
                                  max_iter=max_iter, growth_limit=growth_limit)


def integral_identity_check(params: TricomiParams, g: C1Function, T: float | None = None) -> float:
    """|2 L int_0^T (T - s) s g'(s)^2 ds - T g(T)^2| by the trapezoid rule."""
    t = g.grid
    if T is None:
        T = float(t[-1])
    if not (0 < T <= t[-1] * (1 + 1e-12)):
        raise DomainError("T must lie in (0, grid end]")
    m = int(round(T / g.dt))
    if abs(t[m] - T) > 1e-9 * max(1.0, T):
        raise ArgumentError("T must be a grid point")
    s = t[: m + 1]
    f = (T - s) * s * g.derivative_values[: m + 1] ** 2
    lhs = 2.0 * params.L * float(_trapezoid(f, s))
    rhs = T * g.values[m] ** 2
    return abs(lhs - rhs)
