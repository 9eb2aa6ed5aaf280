"""Deterministic Cauchy problems with smooth initial velocity phi.

Four operators are covered:

====================  =========================  ==========================
variant               equation                   solver
====================  =========================  ==========================
TRICOMI_ALPHA         u_tt = t^alpha u_xx        solve_quadrature / solve_mc
TRICOMI_LOWER         v_tt = t^2 v_xx - v_x      solve_lower_order
WAVE                  u_tt = u_xx                solve_quadrature(alpha=0)
WAVE_LOWER            V_tt = V_xx + V_x          solve_wave_lower
====================  =========================  ==========================

All problems use u(0, x) = 0 and u_t(0, x) = phi(x).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import quadrature as quad
from .core import KernelVariant, TricomiParams, YSampler, sample_z, xi
from .errors import ArgumentError, DomainError
from .specialfn import J0_MAX_ARG, bessel_j0

DEFAULT_TOL = 1e-13


@dataclass(frozen=True)
class InitialVelocity:
    """Initial velocity phi.  The caller guarantees phi is C^2."""

    eval: Callable[[np.ndarray], np.ndarray]
    description: str = ""

    def __call__(self, y):
        return self.eval(y)


def preset_phi(name: str, amplitude: float = 1.0, center: float = 0.0,
               width: float = 1.0) -> InitialVelocity:
    """Named initial velocities: one, identity, square, cos, gaussian-bump."""
    a, c, w = float(amplitude), float(center), float(width)
    if name == "one":
        return InitialVelocity(lambda y: np.full(np.shape(y), a), f"{a}")
    if name == "identity":
        return InitialVelocity(lambda y: a * (np.asarray(y) - c), f"{a}*(y-{c})")
    if name == "square":
        return InitialVelocity(lambda y: a * (np.asarray(y) - c) ** 2, f"{a}*(y-{c})^2")
    if name == "cos":
        return InitialVelocity(lambda y: a * np.cos((np.asarray(y) - c) / w), f"{a}*cos((y-{c})/{w})")
    if name == "gaussian-bump":
        if w <= 0:
            raise DomainError("gaussian-bump width must be > 0")
        return InitialVelocity(
            lambda y: a * np.exp(-0.5 * ((np.asarray(y) - c) / w) ** 2),
            f"{a}*exp(-((y-{c})/{w})^2/2)",
        )
    raise DomainError(f"unknown phi preset {name!r}")


PHI_PRESETS = ("one", "identity", "square", "cos", "gaussian-bump")


def _check_t(t):
    if not (math.isfinite(t) and t >= 0):
        raise DomainError(f"t must be finite and >= 0, got {t}")


def solve_quadrature(params: TricomiParams, phi: InitialVelocity, t: float, x,
                     tol: float = DEFAULT_TOL):
    """u(t, x) = (t/2) int_{-1}^{1} phi(x + xi(t) v) c_hat (1 - v^2)^(-gamma) dv.

    Gauss-Jacobi with weight (1 - v^2)^(-gamma), order doubled until two
    successive orders agree to ``tol``.  ``x`` may be an array.
    """
    t = float(t)
    _check_t(t)
    xs = np.asarray(x, dtype=float)
    if t == 0.0:
        return 0.0 if xs.ndim == 0 else np.zeros_like(xs)
    h = xi(params, t)
    g = params.gamma

    def rule(n):
        v, w = quad.gauss_jacobi(n, -g, -g)
        vals = phi(xs[..., None] + h * v)
        return 0.5 * t * params.c_hat * (vals @ w)

    out = quad.doubling(rule, n0=8, tol=tol, what="solve_quadrature")
    return float(out) if out.ndim == 0 else out


def _mc_chunk(params, phi, t, x, pairs, seed):
    rng = np.random.default_rng(seed)
    y = YSampler(params, rng).sample(pairs)
    z = sample_z(rng, pairs)
    h = xi(params, t)
    # antithetic pair (Z, -Z) sharing the same Y
    return 0.5 * (phi(x + h * z * y) + phi(x - h * z * y))


MC_CHUNK_PAIRS = 1 << 16


def solve_mc(params: TricomiParams, phi: InitialVelocity, t: float, x: float,
             n_samples: int, seed: int = 0, threads: int = 1) -> tuple[float, float]:
    """Monte Carlo estimate of u(t, x) = t E[phi(x + xi(t) Z Y)].

    Samples are drawn in antithetic pairs; chunk k of at most 2**16 pairs uses
    seed ``seed + k``, so the result does not depend on ``threads``.
    Returns ``(estimate, std_error)``.
    """
    if n_samples < 2:
        raise ArgumentError("n_samples must be >= 2")
    t = float(t)
    _check_t(t)
    pairs = n_samples // 2
    sizes = [MC_CHUNK_PAIRS] * (pairs // MC_CHUNK_PAIRS)
    if pairs % MC_CHUNK_PAIRS:
        sizes.append(pairs % MC_CHUNK_PAIRS)
    jobs = [(params, phi, t, float(x), m, seed + k) for k, m in enumerate(sizes)]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda a: _mc_chunk(*a), jobs))
    else:
        parts = [_mc_chunk(*a) for a in jobs]
    vals = np.concatenate(parts)
    est = t * float(np.mean(vals))
    se = t * float(np.std(vals, ddof=1)) / math.sqrt(pairs) if pairs > 1 else math.inf
    return est, se


def solve_lower_order(phi: InitialVelocity, t: float, x, tol: float = DEFAULT_TOL):
    """v(t, x) = int_0^t phi(x - t^2/2 + z^2) dz for v_tt = t^2 v_xx - v_x."""
    t = float(t)
    _check_t(t)
    xs = np.asarray(x, dtype=float)
    if t == 0.0:
        return 0.0 if xs.ndim == 0 else np.zeros_like(xs)

    def rule(n):
        s, w = quad.gauss_legendre(n)
        z = 0.5 * t * (s + 1.0)
        return 0.5 * t * (phi(xs[..., None] - 0.5 * t * t + z * z) @ w)

    out = quad.doubling(rule, n0=8, tol=tol, what="solve_lower_order")
    return float(out) if out.ndim == 0 else out


def solve_lower_order_kernel_form(phi: InitialVelocity, t: float, x,
                                  tol: float = DEFAULT_TOL):
    """Same solution from int phi(y) / (2 sqrt(y - x + t^2/2)) dy.

    The inverse square root at the left end is absorbed by Gauss-Jacobi
    weights (1 + s)^(-1/2), independently of the z-substitution used in
    ``solve_lower_order``.
    """
    t = float(t)
    _check_t(t)
    xs = np.asarray(x, dtype=float)
    if t == 0.0:
        return 0.0 if xs.ndim == 0 else np.zeros_like(xs)
    half = 0.5 * t * t  # half-length of the support interval

    def rule(n):
        s, w = quad.gauss_jacobi(n, 0.0, -0.5)
        y = xs[..., None] - half + half * (s + 1.0)
        # 1/(2 sqrt(half (1+s))) * half ds
        return 0.5 * math.sqrt(half) * (phi(y) @ w)

    out = quad.doubling(rule, n0=8, tol=tol, what="solve_lower_order_kernel_form")
    return float(out) if out.ndim == 0 else out


def solve_wave_lower(phi: InitialVelocity, t: float, x, tol: float = DEFAULT_TOL):
    """V(t, x) = 1/2 int_{x-t}^{x+t} e^((y-x)/2) J0(sqrt(t^2 - (x-y)^2)/2) phi(y) dy.

    The integrand is entire in y, so plain Gauss-Legendre converges
    spectrally.  Requires t <= 60 (J0 argument <= 30).
    """
    t = float(t)
    _check_t(t)
    if t > 2.0 * J0_MAX_ARG:
        raise DomainError(f"t must be <= {2 * J0_MAX_ARG} for the J0 kernel")
    xs = np.asarray(x, dtype=float)
    if t == 0.0:
        return 0.0 if xs.ndim == 0 else np.zeros_like(xs)

    def rule(n):
        s, w = quad.gauss_legendre(n)
        d = t * s  # y - x
        ker = 0.5 * np.exp(0.5 * d) * bessel_j0(0.5 * np.sqrt(np.maximum(t * t - d * d, 0.0)))
        return t * (phi(xs[..., None] + d) @ (w * ker))

    out = quad.doubling(rule, n0=8, tol=tol, what="solve_wave_lower")
    return float(out) if out.ndim == 0 else out


@dataclass
class GridField:
    t_values: np.ndarray
    x_values: np.ndarray
    values: np.ndarray  # shape (len(t_values), len(x_values))

    def __post_init__(self):
        self.t_values = np.asarray(self.t_values, dtype=float)
        self.x_values = np.asarray(self.x_values, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.t_values.size, self.x_values.size):
            raise ArgumentError("values shape does not match the (t, x) grid")

    def rows(self):
        """(t, x, value) triples in row-major order."""
        for i, t in enumerate(self.t_values):
            for j, x in enumerate(self.x_values):
                yield t, x, self.values[i, j]


def solve_on_grid(variant: KernelVariant, phi: InitialVelocity, t_values, x_values,
                  params: TricomiParams | None = None, tol: float = DEFAULT_TOL) -> GridField:
    t_values = np.asarray(t_values, dtype=float)
    x_values = np.asarray(x_values, dtype=float)
    rows = []
    for t in t_values:
        if variant is KernelVariant.TRICOMI_ALPHA:
            rows.append(solve_quadrature(params, phi, t, x_values, tol))
        elif variant is KernelVariant.WAVE:
            from .core import make_params
            rows.append(solve_quadrature(make_params(0.0), phi, t, x_values, tol))
        elif variant is KernelVariant.TRICOMI_LOWER:
            rows.append(solve_lower_order(phi, t, x_values, tol))
        else:
            rows.append(solve_wave_lower(phi, t, x_values, tol))
    return GridField(t_values, x_values, np.vstack(rows))


@dataclass(frozen=True)
class ResidualReport:
    operator_variant: KernelVariant
    max_abs_residual: float
    grid_spacing: tuple[float, float]
    interior_region: tuple[tuple[int, int], tuple[int, int]]
    residual: np.ndarray = field(repr=False, compare=False, default=None)


def _uniform_step(v: np.ndarray, name: str) -> float:
    d = np.diff(v)
    if np.any(d <= 0) or np.max(np.abs(d - d[0])) > 1e-9 * max(1.0, abs(d[0])):
        raise ArgumentError(f"{name} grid must be uniform and ascending")
    return float(d[0])


def residual_oracle(field: GridField, variant: KernelVariant, alpha: float = 0.0) -> ResidualReport:
    """max |D_tt u - a(t) D_xx u - b D_x u| over interior points.

    (a, b) = (t^alpha, 0) for TRICOMI_ALPHA, (t^2, -1) for TRICOMI_LOWER,
    (1, 0) for WAVE and (1, 1) for WAVE_LOWER.  Second-order centred
    stencils; rows with t < dt are skipped.
    """
    tv, xv, u = field.t_values, field.x_values, field.values
    if tv.size < 3 or xv.size < 3:
        raise ArgumentError("residual_oracle needs at least 3 points per direction")
    dt = _uniform_step(tv, "t")
    dx = _uniform_step(xv, "x")
    i0 = 1
    while i0 < tv.size - 1 and tv[i0] < dt * (1 - 1e-12):
        i0 += 1
    i1 = tv.size - 1
    if i0 >= i1:
        raise ArgumentError("no interior time levels with t >= dt")
    c = u[i0:i1, 1:-1]
    u_tt = (u[i0 + 1:i1 + 1, 1:-1] - 2.0 * c + u[i0 - 1:i1 - 1, 1:-1]) / dt ** 2
    u_xx = (u[i0:i1, 2:] - 2.0 * c + u[i0:i1, :-2]) / dx ** 2
    u_x = (u[i0:i1, 2:] - u[i0:i1, :-2]) / (2.0 * dx)
    t = tv[i0:i1, None]
    if variant is KernelVariant.TRICOMI_ALPHA:
        a, b = t ** alpha, 0.0
    elif variant is KernelVariant.TRICOMI_LOWER:
        a, b = t ** 2, -1.0
    elif variant is KernelVariant.WAVE:
        a, b = 1.0, 0.0
    else:
        a, b = 1.0, 1.0
    res = u_tt - a * u_xx - b * u_x
    return ResidualReport(
        operator_variant=variant,
        max_abs_residual=float(np.max(np.abs(res))),
        grid_spacing=(dt, dx),
        interior_region=((i0, i1), (1, xv.size - 1)),
        residual=res,
    )
