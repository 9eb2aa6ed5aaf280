"""Pure numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` operation for operation and are used when the
compiled extension is unavailable (or ``TRICOMI_PURE_PYTHON=1`` is set).
"""

from __future__ import annotations

import math

import numpy as np

# Lanczos approximation, g = 7, n = 9.
LANCZOS_G = 7.0
LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

J0_SERIES_MAX = 12.0
J0_SERIES_TERMS = 64
J0_ASYMPTOTIC_TERMS = 40


def _lanczos_log_gamma_ge_half(x: np.ndarray) -> np.ndarray:
    xm = x - 1.0
    acc = np.full_like(xm, LANCZOS_COEF[0])
    for i in range(1, 9):
        acc = acc + LANCZOS_COEF[i] / (xm + i)
    t = xm + LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (xm + 0.5) * np.log(t) - t + np.log(acc)


def log_gamma(x) -> np.ndarray:
    """log Gamma(x) for x > 0 (no domain checks)."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < 0.5
    if np.any(~small):
        out[~small] = _lanczos_log_gamma_ge_half(x[~small])
    if np.any(small):
        xs = x[small]
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        out[small] = (
            math.log(math.pi)
            - np.log(np.sin(math.pi * xs))
            - _lanczos_log_gamma_ge_half(1.0 - xs)
        )
    return out


def gamma(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < 0.5
    if np.any(~small):
        xb = x[~small] - 1.0
        acc = np.full_like(xb, LANCZOS_COEF[0])
        for i in range(1, 9):
            acc = acc + LANCZOS_COEF[i] / (xb + i)
        t = xb + LANCZOS_G + 0.5
        out[~small] = math.sqrt(2.0 * math.pi) * np.exp((xb + 0.5) * np.log(t) - t) * acc
    if np.any(small):
        xs = x[small]
        out[small] = math.pi / (np.sin(math.pi * xs) * gamma(1.0 - xs))
    return out


def _j0_series(z: np.ndarray) -> np.ndarray:
    q = -0.25 * z * z
    term = np.ones_like(z)
    acc = np.ones_like(z)
    for k in range(1, J0_SERIES_TERMS):
        term = term * q / (k * k)
        acc = acc + term
    return acc


def _j0_asymptotic(z: np.ndarray) -> np.ndarray:
    inv8z = 1.0 / (8.0 * z)
    p = np.ones_like(z)
    q = np.zeros_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    last = np.full_like(z, np.inf)
    for m in range(1, J0_ASYMPTOTIC_TERMS):
        term = term * ((2 * m - 1) ** 2) * inv8z / m
        mag = np.abs(term)
        # stop each element at its smallest term (optimal truncation)
        active = active & (mag < last)
        last = np.where(active, mag, last)
        contrib = np.where(active, term, 0.0)
        if m % 2 == 0:
            sign = 1.0 if (m // 2) % 2 == 0 else -1.0
            p = p + sign * contrib
        else:
            sign = -1.0 if ((m - 1) // 2) % 2 == 0 else 1.0
            q = q + sign * contrib
    chi = z - 0.25 * math.pi
    return np.sqrt(2.0 / (math.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))


def j0(z) -> np.ndarray:
    z = np.abs(np.asarray(z, dtype=float))
    out = np.empty_like(z)
    near = z <= J0_SERIES_MAX
    if np.any(near):
        out[near] = _j0_series(z[near])
    if np.any(~near):
        out[~near] = _j0_asymptotic(z[~near])
    return out


def quad_moments(t: np.ndarray, h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative A(t_j) = int_0^t_j s h ds and B(t_j) = int_0^t_j s^2 h ds.

    ``h`` is interpolated by the quadratic through nodes (i-1, i, i+1) on cell
    [t_i, t_i+1] (nodes 0, 1, 2 on the first cell) and integrated exactly
    against s and s^2.  Requires a uniform grid with at least 3 points.
    """
    t = np.asarray(t, dtype=float)
    h = np.asarray(h, dtype=float)
    n = t.size
    dt = (t[-1] - t[0]) / (n - 1)
    cells = n - 1
    i = np.arange(cells)
    j = np.where(i == 0, 0, i - 1)
    a = np.where(i == 0, 0.0, -1.0)
    f0, f1, f2 = h[j], h[j + 1], h[j + 2]
    d1 = f1 - f0
    d2 = 0.5 * (f2 - 2.0 * f1 + f0)
    c0 = f0 - d1 * a + d2 * a * (a + 1.0)
    c1 = d1 - d2 * (2.0 * a + 1.0)
    c2 = d2
    s = t[:-1]
    # moments of tau^m over [0, 1]
    m0 = c0 + c1 / 2.0 + c2 / 3.0
    m1 = c0 / 2.0 + c1 / 3.0 + c2 / 4.0
    m2 = c0 / 3.0 + c1 / 4.0 + c2 / 5.0
    cell_a = dt * (s * m0 + dt * m1)
    cell_b = dt * (s * s * m0 + 2.0 * s * dt * m1 + dt * dt * m2)
    A = np.empty(n)
    B = np.empty(n)
    A[0] = 0.0
    B[0] = 0.0
    np.cumsum(cell_a, out=A[1:])
    np.cumsum(cell_b, out=B[1:])
    return A, B
