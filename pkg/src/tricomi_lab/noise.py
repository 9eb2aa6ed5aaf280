"""Noise paths, mollifiers, Wiener integrals and variance calculators.

Variances of Gaussian solutions are deterministic integrals: for white
noise E[(int f dB)^2] = ||f||^2_{L^2}; for fractional noise with Hurst index
H in (1/2, 1) it is the H-norm

    ||f||_H^2 = H (2H - 1) int int f(y) f(z) |y - z|^(2H - 2) dy dz.

Mollified solutions replace the kernel K by f_n(z) = int K(y) rho_n(y - z) dy.
Their variances are computed here in two independent ways:

* directly, by evaluating f_n on a graded z-grid (``mollified_kernel``) and
  integrating (``mollified_l2_direct``);
* through the autocorrelation A(s) = int K(y) K(y + s) dy, using
  ||f_n||^2 = int A P_n and ||f_n - K||^2 = int (A - A(0)) (P_n - 2 rho_n)
  with P_n = rho_n * rho_n (``mollified_l2`` and, with A replaced by its
  H-smoothed version, ``mollified_h``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import quadrature as quad
from .core import KernelSpec, KernelVariant
from .errors import ArgumentError, DomainError, NumericError, ResourceError
from .specialfn import beta_fn, bessel_j0, gamma_fn

MAX_CELLS = 10**8
MAX_FBM_CELLS = 4096


class Variance(enum.Enum):
    """Marker for kernels that are not square integrable."""

    INFINITE = "infinite"


INFINITE = Variance.INFINITE


# ---------------------------------------------------------------------------
# Paths


@dataclass
class NoisePath:
    """Increments of a two-sided (fractional) Brownian path on a uniform grid.

    ``x_grid`` holds the N + 1 cell edges spanning [-R, R]; ``increments[i]``
    is B(x_grid[i + 1]) - B(x_grid[i]).
    """

    x_grid: np.ndarray
    increments: np.ndarray
    hurst: float = 0.5
    seed: int | None = None

    @property
    def dx(self) -> float:
        return float(self.x_grid[1] - self.x_grid[0])

    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.x_grid[1:] + self.x_grid[:-1])

    def values(self) -> np.ndarray:
        """Path values at the cell edges, anchored so that B(0) = 0."""
        b = np.concatenate([[0.0], np.cumsum(self.increments)])
        k0 = int(np.argmin(np.abs(self.x_grid)))
        return b - b[k0]

    def value_at(self, x: float) -> float:
        k = int(round((x - self.x_grid[0]) / self.dx))
        return float(self.values()[k])


def make_grid(R: float, dx: float, max_cells: int = MAX_CELLS) -> np.ndarray:
    if not (R > 0 and dx > 0 and math.isfinite(R) and math.isfinite(dx)):
        raise DomainError("R and dx must be positive and finite")
    half = R / dx
    k = round(half)
    if abs(half - k) > 1e-9 * max(1.0, half) or k < 1:
        raise ArgumentError("R / dx must be a positive integer")
    if 2 * k > max_cells:
        raise ResourceError(f"grid of {2 * k} cells exceeds the limit of {max_cells}")
    return np.arange(-k, k + 1) * dx


def sample_brownian(R: float, dx: float, seed: int) -> NoisePath:
    """Two-sided Brownian path: i.i.d. N(0, dx) increments on [-R, R]."""
    grid = make_grid(R, dx)
    rng = np.random.default_rng(seed)
    inc = rng.standard_normal(grid.size - 1) * math.sqrt(dx)
    return NoisePath(grid, inc, 0.5, seed)


def fgn_autocovariance(n: int, dx: float, hurst: float) -> np.ndarray:
    """c(k) = dx^(2H) (|k+1|^(2H) - 2|k|^(2H) + |k-1|^(2H)) / 2, k = 0..n-1."""
    k = np.arange(n, dtype=float)
    e = 2.0 * hurst
    return 0.5 * dx ** e * (np.abs(k + 1) ** e - 2.0 * k ** e + np.abs(k - 1) ** e)


@lru_cache(maxsize=8)
def fgn_cholesky(n: int, dx: float, hurst: float) -> np.ndarray:
    """Lower Cholesky factor of the n x n fGn covariance (read-only, cached)."""
    if n > MAX_FBM_CELLS:
        raise ResourceError(f"Cholesky fBm limited to {MAX_FBM_CELLS} cells, got {n}")
    c = fgn_autocovariance(n, dx, hurst)
    idx = np.arange(n)
    cov = c[np.abs(idx[:, None] - idx[None, :])]
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise NumericError("fGn covariance is not numerically positive definite; "
                           "use a smaller grid", n=n, hurst=hurst) from exc
    chol.setflags(write=False)
    return chol


def _check_hurst(hurst: float, allow_half: bool = True):
    lo_ok = hurst >= 0.5 if allow_half else hurst > 0.5
    if not (lo_ok and hurst < 1.0):
        raise DomainError(f"Hurst index must lie in {'[' if allow_half else '('}0.5, 1), got {hurst}")


def sample_fbm(R: float, dx: float, hurst: float, seed: int) -> NoisePath:
    """Two-sided fBm path from Cholesky-factored fractional Gaussian noise."""
    _check_hurst(hurst)
    grid = make_grid(R, dx, MAX_FBM_CELLS)
    n = grid.size - 1
    rng = np.random.default_rng(seed)
    inc = fgn_cholesky(n, float(dx), float(hurst)) @ rng.standard_normal(n)
    return NoisePath(grid, inc, hurst, seed)


def _path_normals(n_cells: int, n_paths: int, seed: int, first: int = 0) -> np.ndarray:
    out = np.empty((n_paths, n_cells))
    for i in range(n_paths):
        out[i] = np.random.default_rng(seed + first + i).standard_normal(n_cells)
    return out


def wiener_sums(f_mid: np.ndarray, n_cells_dx: tuple[int, float], n_paths: int, seed: int,
                hurst: float = 0.5, chunk: int = 1024) -> np.ndarray:
    """sum_i f(mid_i) dB_i for ``n_paths`` independent paths.

    Path k is generated from seed ``seed + k`` exactly as ``sample_brownian`` /
    ``sample_fbm`` would, so the draws do not depend on the chunking (sums may
    differ in the last bit through BLAS blocking).
    ``f_mid`` may be 2-D (several integrands sharing the same paths).
    """
    n_cells, dx = n_cells_dx
    f_mid = np.atleast_2d(np.asarray(f_mid, dtype=float))
    if f_mid.shape[1] != n_cells:
        raise ArgumentError("integrand length does not match the number of cells")
    if not np.all(np.isfinite(f_mid)):
        raise NumericError("integrand is not finite at a grid midpoint")
    if hurst == 0.5:
        chol_t = None
    else:
        _check_hurst(hurst)
        chol_t = fgn_cholesky(n_cells, float(dx), float(hurst)).T
    out = np.empty((n_paths, f_mid.shape[0]))
    for start in range(0, n_paths, chunk):
        m = min(chunk, n_paths - start)
        z = _path_normals(n_cells, m, seed, start)
        inc = z * math.sqrt(dx) if chol_t is None else z @ chol_t
        out[start:start + m] = inc @ f_mid.T
    return out if out.shape[1] > 1 else out[:, 0]


def wiener_integral(path: NoisePath, f) -> float:
    """sum_i f(midpoint_i) * increment_i."""
    vals = np.asarray(f(path.midpoints()), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise NumericError("integrand is not finite at a grid midpoint")
    return float(vals @ path.increments)


# ---------------------------------------------------------------------------
# Mollifiers


class MollifierFamily(enum.Enum):
    BUMP = "bump"
    POLY_BUMP = "poly-bump"


def _bump_mass() -> float:
    return float(quad.doubling(
        lambda n: quad.gl_integrate(lambda u: np.exp(-1.0 / (1.0 - u * u)), -1.0, 1.0, n),
        n0=64, tol=1e-14, what="bump mass"))


BUMP_MASS = _bump_mass()  # int_{-1}^{1} exp(-1/(1-u^2)) du
BUMP_CONST = 1.0 / BUMP_MASS
POLY_BUMP_CONST = 315.0 / 256.0  # 1 / int_{-1}^{1} (1-u^2)^4 du


@dataclass(frozen=True)
class MollifierSpec:
    family: MollifierFamily
    n: int
    r_n: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("mollifier index n must be >= 1")
        if self.r_n is None:
            object.__setattr__(self, "r_n", 1.0 / self.n)
        if not self.r_n > 0:
            raise DomainError("support radius must be > 0")

    @property
    def radius(self) -> float:
        return float(self.r_n)


def mollifier_eval(spec: MollifierSpec, x):
    """rho_n(x); zero outside (-r_n, r_n)."""
    r = spec.radius
    u = np.asarray(x, dtype=float) / r
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    if spec.family is MollifierFamily.BUMP:
        out[inside] = BUMP_CONST * np.exp(-1.0 / (1.0 - ui * ui)) / r
    else:
        out[inside] = POLY_BUMP_CONST * (1.0 - ui * ui) ** 4 / r
    return float(out) if out.ndim == 0 else out


def mollifier_autoconvolution(spec: MollifierSpec, s, order: int = 128) -> np.ndarray:
    """P(s) = int rho(w) rho(s - w) dw, |s| <= 2 r."""
    r = spec.radius
    s = np.abs(np.asarray(s, dtype=float))
    lo = s - r
    hi = np.full_like(s, r)
    x, w = quad.gauss_legendre(order)
    half = 0.5 * (hi - lo)
    wv = lo[..., None] + half[..., None] * (x + 1.0)
    vals = mollifier_eval(spec, wv) * mollifier_eval(spec, s[..., None] - wv)
    out = half * (vals @ w)
    return np.where(s < 2 * r, out, 0.0)


# ---------------------------------------------------------------------------
# Mollified kernels (direct route)


def _kernel_segments(kernel: KernelSpec):
    """(lo, hi, singular_end, exponent) pieces covering the kernel support."""
    lo, hi = kernel.support()
    el, er = kernel.singular_exponents
    if kernel.variant is KernelVariant.TRICOMI_ALPHA and el > 0:
        return [(lo, kernel.x, "left", el), (kernel.x, hi, "right", er)]
    if el > 0:
        return [(lo, hi, "left", el)]
    return [(lo, hi, None, 0.0)]


def mollified_kernel(kernel: KernelSpec, spec: MollifierSpec, z, order: int = 128):
    """f_n(z) = int K(y) rho_n(y - z) dy, vectorised over z.

    Near a singular endpoint e with K ~ |y - e|^(-g) the variable
    w = |y - e|^(1 - g) makes the integrand smooth.
    """
    z = np.asarray(z, dtype=float)
    zf = z.ravel()
    r = spec.radius
    out = np.zeros_like(zf)
    if kernel.t == 0:
        return float(out[0]) if z.ndim == 0 else out.reshape(z.shape)
    lo, hi = kernel.support()
    x, w = quad.gauss_legendre(order)
    for slo, shi, sing, g in _kernel_segments(kernel):
        p = np.maximum(slo, zf - r)
        q = np.minimum(shi, zf + r)
        act = p < q
        if not np.any(act):
            continue
        pa, qa, za = p[act], q[act], zf[act]
        if sing is None:
            half = 0.5 * (qa - pa)
            y = pa[:, None] + half[:, None] * (x + 1.0)
            dl, dr = y - lo, hi - y
            jac = half[:, None]
        else:
            k = 1.0 - g
            if sing == "left":
                wp, wq = (pa - lo) ** k, (qa - lo) ** k
            else:
                wp, wq = (hi - qa) ** k, (hi - pa) ** k
            half = 0.5 * (wq - wp)
            wv = wp[:, None] + half[:, None] * (x + 1.0)
            d = wv ** (1.0 / k)  # distance to the singular end
            jac = half[:, None] * d ** g / k
            if sing == "left":
                dl, dr = d, (hi - lo) - d
                y = lo + d
            else:
                dl, dr = (hi - lo) - d, d
                y = hi - d
        vals = kernel.values_from_distances(dl, dr) * mollifier_eval(spec, y - za[:, None])
        out[act] += np.sum(vals * jac * w, axis=1)
    return float(out[0]) if z.ndim == 0 else out.reshape(z.shape)


def _graded_breaks(a: float, b: float, r: float, towards_a: bool, towards_b: bool) -> list[float]:
    """Breakpoints on [a, b] refined geometrically (ratio 2) towards the ends."""
    pts = {a, b}
    length = b - a
    step = r
    while step < length / 2:
        if towards_a:
            pts.add(a + step)
        if towards_b:
            pts.add(b - step)
        step *= 2.0
    mid = 0.5 * (a + b)
    pts.add(mid)
    return sorted(pts)


def mollified_l2_direct(kernel: KernelSpec, spec: MollifierSpec, order: int = 32,
                        ts_level: int = 7) -> tuple[float, float]:
    """(||f_n||^2, ||f_n - K||^2) by quadrature over z of the mollified kernel."""
    r = spec.radius
    lo, hi = kernel.support()
    el, er = kernel.singular_exponents
    var = 0.0
    gap = 0.0

    def fk(zz, dl, dr):
        return mollified_kernel(kernel, spec, zz), kernel.values_from_distances(dl, dr)

    # outside the support: K = 0
    for a, b in ((lo - r, lo), (hi, hi + r)):
        v = quad.gl_panels(lambda zz: mollified_kernel(kernel, spec, zz) ** 2,
                           np.linspace(a, b, 5), order)
        var += v
        gap += v
    inner_lo, inner_hi = lo + min(r, (hi - lo) / 4), hi - min(r, (hi - lo) / 4)
    # end panels inside the support (kernel may be singular there)
    for a, b in ((lo, inner_lo), (inner_hi, hi)):
        def integrand(zz, dl, dr, a=a, b=b):
            f = mollified_kernel(kernel, spec, zz)
            k = kernel.values_from_distances(dl + (a - lo), dr + (hi - b))
            return np.stack([f * f, (f - k) ** 2], axis=-1)
        res = quad.tanh_sinh_fixed(integrand, a, b, ts_level)
        var += res[0]
        gap += res[1]
    breaks = _graded_breaks(inner_lo, inner_hi, r, True, True)

    def body(zz):
        f = mollified_kernel(kernel, spec, zz)
        k = kernel.values_from_distances(zz - lo, hi - zz)
        return np.stack([f * f, (f - k) ** 2])

    x, w = quad.gauss_legendre(order)
    bb = np.asarray(breaks)
    half = 0.5 * (bb[1:] - bb[:-1])
    zz = bb[:-1, None] + half[:, None] * (x + 1.0)
    vals = body(zz.ravel()).reshape(2, *zz.shape)
    tot = np.sum(half[None, :, None] * w * vals, axis=(1, 2))
    if max(el, er) >= 0.5:
        return float(var + tot[0]), math.inf  # K itself is not square integrable
    return float(var + tot[0]), float(gap + tot[1])


# ---------------------------------------------------------------------------
# Closed-form and quadrature variances of the unmollified kernels


def l2_variance(kernel: KernelSpec):
    """||K||^2_{L^2} = E[U(t, x)^2], or ``INFINITE`` for the lower-order kernel."""
    t = kernel.t
    v = kernel.variant
    if v is KernelVariant.TRICOMI_LOWER:
        return INFINITE
    if t == 0:
        return 0.0
    if v is KernelVariant.WAVE:
        return 0.5 * t
    if v is KernelVariant.TRICOMI_ALPHA:
        p = kernel.params
        h = kernel.half_width
        return (t * t / (4.0 * h)) * p.c_hat ** 2 * math.sqrt(math.pi) \
            * gamma_fn(1.0 - 2.0 * p.gamma) / gamma_fn(1.5 - 2.0 * p.gamma)
    return wave_lower_l2_variance(t)


def wave_lower_l2_variance(t: float, tol: float = 1e-13) -> float:
    """1/4 int_{-t}^{t} e^u J0(sqrt(t^2 - u^2)/2)^2 du."""
    if t == 0:
        return 0.0

    def rule(n):
        u = quad.gauss_legendre(n)[0] * t
        w = quad.gauss_legendre(n)[1] * t
        j = bessel_j0(0.5 * np.sqrt(np.maximum(t * t - u * u, 0.0)))
        return 0.25 * float(np.sum(w * np.exp(u) * j * j))

    return float(quad.doubling(rule, n0=16, tol=tol, what="wave-lower variance"))


def truncated_lower_variance(t: float, eps: float) -> float:
    """L^2 mass of the lower-order kernel on [x - t^2/2 + eps, x + t^2/2]."""
    if not (0 < eps < t * t):
        raise ArgumentError("need 0 < eps < t^2")
    return 0.25 * math.log(t * t / eps)


def h_norm_closed_form(t: float, hurst: float) -> float:
    """(H/2) B(1/2, 2H - 1) t^(4H - 2): H-norm of the lower-order kernel."""
    _check_hurst(hurst, allow_half=False)
    return 0.5 * hurst * beta_fn(0.5, 2.0 * hurst - 1.0) * t ** (4.0 * hurst - 2.0)


def h_norm_variance(kernel: KernelSpec, hurst: float, level: int = 7) -> float:
    """H(2H-1) int int K(y) K(z) |y - z|^(2H-2) dy dz by direct quadrature.

    The square is split along the diagonal; on {y < z} the substitution
    z = y + w^(1/(2H-1)) removes the diagonal singularity, and tanh-sinh
    handles the remaining endpoint singularities of K.
    """
    _check_hurst(hurst, allow_half=False)
    if kernel.t == 0:
        return 0.0
    p = 2.0 * hurst - 1.0
    lo, hi = kernel.support()
    length = hi - lo
    wr, wdl, wdr = quad.tanh_sinh_rule(level)

    def inner(dl_y):
        # int_0^{(hi - y)^p} K(y + w^(1/p)) dw, vectorised over y (via dl_y)
        top = (length - dl_y) ** p
        half = 0.5 * top
        # distances in w from 0 and from top
        a0 = half[:, None] * wdl[None, :]
        a1 = half[:, None] * wdr[None, :]
        wv = np.where(a0 <= a1, a0, top[:, None] - a1)
        # z - y = w^(1/p); distance of z to hi = (hi - y) - w^(1/p) computed via a1
        step = wv ** (1.0 / p)
        dr_z = np.where(a0 <= a1, (length - dl_y)[:, None] - step,
                        (length - dl_y)[:, None] * -np.expm1(np.log1p(-a1 / top[:, None]) / p))
        dl_z = dl_y[:, None] + step
        kz = kernel.values_from_distances(dl_z, dr_z)
        return half * (kz @ wr)

    def outer(y, dl, dr):
        return kernel.values_from_distances(dl, dr) * inner(dl)

    val = quad.tanh_sinh_fixed(outer, lo, hi, level)
    return float(2.0 * hurst * val)


# ---------------------------------------------------------------------------
# Autocorrelation route


def autocorrelation(kernel: KernelSpec, s, level: int = 7) -> np.ndarray:
    """A(s) = int K(y) K(y + s) dy (even in s; zero for |s| >= support length).

    Closed forms for WAVE and TRICOMI_LOWER; tanh-sinh (TRICOMI_ALPHA) or
    Gauss-Legendre (WAVE_LOWER) otherwise.  A(0) is infinite for
    TRICOMI_LOWER.
    """
    s = np.abs(np.asarray(s, dtype=float))
    lo, hi = kernel.support()
    ell = hi - lo
    v = kernel.variant
    out = np.zeros_like(s)
    m = s < ell
    if v is KernelVariant.WAVE:
        out[m] = 0.25 * (ell - s[m])
        return out
    if v is KernelVariant.TRICOMI_LOWER:
        with np.errstate(divide="ignore"):
            sm = s[m]
            out[m] = 0.5 * np.log((np.sqrt(ell) + np.sqrt(ell - sm)) / np.sqrt(sm))
        return out
    sm = s[m]
    span = ell - sm
    if v is KernelVariant.TRICOMI_ALPHA:
        w, dl, dr = quad.tanh_sinh_rule(level)
        half = 0.5 * span[:, None]
        a = half * dl
        b = half * dr
        # K(y): distances (a, s + b); K(y + s): distances (s + a, b)
        k1 = kernel.values_from_distances(a, sm[:, None] + b)
        k2 = kernel.values_from_distances(sm[:, None] + a, b)
        out[m] = half[:, 0] * ((k1 * k2) @ w)
        return out
    x, w = quad.gauss_legendre(96)
    half = 0.5 * span[:, None]
    a = half * (x + 1.0)
    k1 = kernel.values_from_distances(a, sm[:, None] + (span[:, None] - a))
    k2 = kernel.values_from_distances(sm[:, None] + a, span[:, None] - a)
    out[m] = half[:, 0] * ((k1 * k2) @ w)
    return out


def autocorrelation_at_zero(kernel: KernelSpec):
    return l2_variance(kernel)


def h_autocorrelation(kernel: KernelSpec, hurst: float, v, level: int = 7) -> np.ndarray:
    """G(v) = int A(u) H (2H-1) |u - v|^(2H-2) du = <K, K(. + v)>_H.

    Uses u - v = +-w^(1/p), p = 2H - 1, which turns the power weight into the
    constant H; remaining endpoint singularities (log at u = 0, root at
    |u| = support length) are left to tanh-sinh.
    """
    _check_hurst(hurst, allow_half=False)
    if kernel.variant not in (KernelVariant.TRICOMI_LOWER, KernelVariant.WAVE):
        raise DomainError("H-autocorrelation is provided for TRICOMI_LOWER and WAVE kernels")
    p = 2.0 * hurst - 1.0
    v = np.abs(np.asarray(v, dtype=float))
    lo, hi = kernel.support()
    ell = hi - lo
    wr, wdl, wdr = quad.tanh_sinh_rule(level)
    tiny = np.finfo(float).tiny  # w^(1/p) may underflow; A is only log-singular at 0
    A = lambda u: autocorrelation(kernel, np.maximum(u, tiny))  # noqa: E731
    total = np.zeros_like(v)
    # piece 1: u in [v, ell], u = v + w^(1/p)
    top = np.maximum(ell - v, 0.0) ** p
    half = 0.5 * top[:, None]
    w1 = np.where(wdl <= wdr, half * wdl, top[:, None] - half * wdr)
    u1 = v[:, None] + w1 ** (1.0 / p)
    total += half[:, 0] * (A(u1) @ wr)
    # piece 2: u in [0, v], u = v - w^(1/p), w in [0, v^p]
    vp = v ** p
    half2 = 0.5 * vp[:, None]
    a0 = half2 * wdl
    a1 = half2 * wdr
    with np.errstate(divide="ignore", invalid="ignore"):
        u2 = np.where(a0 <= a1, v[:, None] - a0 ** (1.0 / p),
                      -v[:, None] * np.expm1(np.log1p(-a1 / vp[:, None]) / p))
    u2 = np.where(vp[:, None] > 0, u2, 1.0)
    total += np.where(vp > 0, half2[:, 0] * (A(u2) @ wr), 0.0)
    # piece 3: u in [-ell, 0] mirrored, |u| = w^(1/p) - v, w in [v^p, (ell+v)^p]
    top3 = (ell + v) ** p
    half3 = 0.5 * (top3 - vp)[:, None]
    b0 = half3 * wdl
    b1 = half3 * wdr
    with np.errstate(divide="ignore", invalid="ignore"):
        u3 = np.where(b0 <= b1,
                      np.where(vp[:, None] > 0, v[:, None] * np.expm1(np.log1p(b0 / np.where(vp > 0, vp, 1.0)[:, None]) / p), b0 ** (1.0 / p)),
                      (top3[:, None] - b1) ** (1.0 / p) - v[:, None])
    total += half3[:, 0] * (A(u3) @ wr)
    return hurst * total


@dataclass(frozen=True)
class MollifiedMoments:
    """Variance of the mollified solution and its mean-square gap to the limit."""

    variance: float
    gap: float | None  # None when the limit is not square integrable
    limit: float | Variance


def _smoothed_pair(spec: MollifierSpec, func, level: int):
    """(int func P, int func rho) over the mollifier supports, func even."""
    r = spec.radius

    def with_p(s, dl, dr):
        return func(dl) * mollifier_autoconvolution(spec, dl)

    def with_rho(s, dl, dr):
        return func(dl) * mollifier_eval(spec, dl)

    ip = 2.0 * quad.tanh_sinh_fixed(with_p, 0.0, 2.0 * r, level)
    ir = 2.0 * quad.tanh_sinh_fixed(with_rho, 0.0, r, level)
    return float(ip), float(ir)


def mollified_l2(kernel: KernelSpec, spec: MollifierSpec, level: int = 7) -> MollifiedMoments:
    """White-noise variance ||f_n||^2 and gap ||f_n - K||^2 via A(s)."""
    limit = l2_variance(kernel)
    if kernel.t == 0:
        return MollifiedMoments(0.0, 0.0, 0.0)
    if limit is INFINITE:
        var, _ = _smoothed_pair(spec, lambda s: autocorrelation(kernel, s), level)
        return MollifiedMoments(var, None, INFINITE)
    d = lambda s: autocorrelation(kernel, s) - limit  # noqa: E731
    ip, ir = _smoothed_pair(spec, d, level)
    return MollifiedMoments(limit + ip, ip - 2.0 * ir, limit)


def mollified_h(kernel: KernelSpec, spec: MollifierSpec, hurst: float,
                level: int = 7) -> MollifiedMoments:
    """Fractional-noise analogue of ``mollified_l2`` using the H-norm."""
    if kernel.t == 0:
        return MollifiedMoments(0.0, 0.0, 0.0)
    limit = float(h_autocorrelation(kernel, hurst, [0.0], level)[0])
    d = lambda s: h_autocorrelation(kernel, hurst, s, level) - limit  # noqa: E731
    ip, ir = _smoothed_pair(spec, d, level)
    return MollifiedMoments(limit + ip, ip - 2.0 * ir, limit)


@dataclass
class VarianceCurve:
    n_values: list[int]
    variances: list[float]
    closed_form_limit: float | Variance
    fitted_log_slope: float = math.nan
    radii: list[float] = field(default_factory=list)

    def __post_init__(self):
        if len(self.n_values) != len(self.variances):
            raise ArgumentError("n_values and variances must have equal length")
        if any(v < 0 for v in self.variances):
            raise ArgumentError("variances must be >= 0")
