"""Quadrature rules used throughout the package.

Three families are provided:

* Gauss-Legendre with order doubling (smooth integrands),
* Gauss-Jacobi (integrands of the form (1-v)^a (1+v)^b * smooth),
* tanh-sinh (double exponential) for endpoint singularities of unknown or
  mixed type.  The integrand receives the exact distances to both endpoints
  so that kernels like (y - a)^(-gamma) never suffer cancellation in y - a.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from .errors import NumericError

MAX_GAUSS_ORDER = 4096
# Nodes closer than this (relative to the half-length) to an endpoint are
# dropped; for integrable power singularities the neglected mass is < 1e-15.
TS_MIN_DISTANCE = 1e-200


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=256)
def gauss_jacobi(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [-1, 1] for the weight (1 - v)^a (1 + v)^b."""
    x, w = roots_jacobi(n, a, b)
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _converged(new: np.ndarray, old: np.ndarray, tol: float) -> bool:
    scale = np.maximum(1.0, np.abs(new))
    return bool(np.all(np.abs(new - old) <= tol * scale))


def doubling(rule: Callable[[int], np.ndarray], n0: int = 16, tol: float = 1e-13,
             max_order: int = MAX_GAUSS_ORDER, what: str = "integral",
             floor_factor: float = 1e3):
    """Evaluate ``rule(n)`` for n = n0, 2 n0, ... until successive values agree.

    Agreement is |I_2n - I_n| <= tol * max(1, |I_2n|) componentwise.  High-order
    rules carry their own rounding noise, so if the relative difference stops
    shrinking once it is already below ``floor_factor * tol`` the estimate
    with the smallest difference is returned.
    """
    n = n0
    prev = np.asarray(rule(n), dtype=float)
    best, best_diff = None, math.inf
    diff = math.inf
    while n < max_order:
        n *= 2
        cur = np.asarray(rule(n), dtype=float)
        if _converged(cur, prev, tol):
            return cur
        last = diff
        diff = float(np.max(np.abs(cur - prev) / np.maximum(1.0, np.abs(cur))))
        if diff < best_diff:
            best, best_diff = cur, diff
        if diff >= last and best_diff <= floor_factor * tol:
            return best
        prev = cur
    raise NumericError(
        f"{what}: quadrature did not converge by order {max_order}",
        order=n,
        last_difference=diff,
    )


def gl_integrate(f, a: float, b: float, n: int) -> np.ndarray:
    """Fixed-order Gauss-Legendre on [a, b]; ``f`` must accept an array."""
    x, w = gauss_legendre(n)
    half = 0.5 * (b - a)
    y = a + half * (x + 1.0)
    return half * np.tensordot(w, f(y), axes=(0, 0))


def gl_panels(f, breaks, n: int = 24) -> float:
    """Composite Gauss-Legendre over consecutive intervals of ``breaks``."""
    x, w = gauss_legendre(n)
    breaks = np.asarray(breaks, dtype=float)
    lo, hi = breaks[:-1], breaks[1:]
    half = 0.5 * (hi - lo)
    y = lo[:, None] + half[:, None] * (x[None, :] + 1.0)
    vals = f(y)
    return float(np.sum(half[:, None] * w[None, :] * vals))


@lru_cache(maxsize=32)
def tanh_sinh_rule(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unit tanh-sinh rule on [-1, 1] with step h = 2**-level.

    Returns ``(w, dl, dr)``: weights and the distances of each node from -1
    and from +1, both computed without cancellation.
    """
    h = 2.0 ** (-level)
    kmax = int(math.ceil(6.6 / h))
    k = np.arange(-kmax, kmax + 1)
    s = k * h
    u = 0.5 * math.pi * np.sinh(s)
    au = np.abs(u)
    e = np.exp(-2.0 * au)
    near = 2.0 * e / (1.0 + e)          # 1 - tanh|u|
    far = 2.0 - near                     # 1 + tanh|u|
    dr = np.where(u >= 0, near, far)
    dl = np.where(u >= 0, far, near)
    w = h * 0.5 * math.pi * np.cosh(s) * 4.0 * e / (1.0 + e) ** 2
    keep = (np.minimum(dl, dr) > TS_MIN_DISTANCE) & (w > 0)
    out = (w[keep], dl[keep], dr[keep])
    for arr in out:
        arr.setflags(write=False)
    return out


def tanh_sinh_fixed(f, a: float, b: float, level: int):
    """Apply the level-``level`` rule; ``f(y, dl, dr)`` gets y and distances."""
    w, dl, dr = tanh_sinh_rule(level)
    half = 0.5 * (b - a)
    dl = half * dl
    dr = half * dr
    y = np.where(dl <= dr, a + dl, b - dr)
    return half * np.tensordot(w, f(y, dl, dr), axes=(0, 0))


def tanh_sinh(f, a: float, b: float, tol: float = 1e-12, level0: int = 3,
              max_level: int = 9, what: str = "integral"):
    """Adaptive tanh-sinh: halve the step until successive levels agree."""
    if b == a:
        return np.asarray(f(np.array([a]), np.zeros(1), np.zeros(1)))[0] * 0.0
    prev = tanh_sinh_fixed(f, a, b, level0)
    for level in range(level0 + 1, max_level + 1):
        cur = tanh_sinh_fixed(f, a, b, level)
        if _converged(cur, prev, tol):
            return cur
        prev = cur
    raise NumericError(
        f"{what}: tanh-sinh did not converge by level {max_level}",
        last_difference=float(np.max(np.abs(cur - prev))),
    )
