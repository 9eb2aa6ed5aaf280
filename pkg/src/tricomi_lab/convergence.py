"""Mollifier-limit studies: convergence, divergence and restoration by fractional noise.

Each study evaluates, along a schedule of mollifiers rho_n with radii r_n,
the variance of the mollified solution and its mean-square distance to the
unmollified one, then classifies the curve.  A few points of every curve are
cross-checked against Monte Carlo Wiener integrals over shared noise paths.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from . import noise
from .core import KernelSpec, KernelVariant, make_params
from .errors import ArgumentError, DomainError

WHITE_NOISE_MAX_CELLS = 1 << 14
CELLS_PER_RADIUS = 40


class Verdict(enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    INCONCLUSIVE = "inconclusive"
    NONE = "none"  # single-point schedule


def default_schedule(k_max: int = 14) -> list[int]:
    return [2 ** k for k in range(k_max + 1)]


@dataclass
class StudyConfig:
    variant: KernelVariant
    alpha: float = 2.0
    t: float = 1.0
    x: float = 0.0
    family: noise.MollifierFamily = noise.MollifierFamily.BUMP
    n_values: list[int] = field(default_factory=default_schedule)
    hurst: float | None = None
    paths: int = 10_000
    seed: int = 42
    tolerance: float = 0.01
    empirical: bool = True
    threads: int = 1

    def __post_init__(self):
        self.variant = KernelVariant(self.variant)
        self.family = noise.MollifierFamily(self.family)
        self.n_values = [int(n) for n in self.n_values]
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ArgumentError("n schedule must be non-empty and positive")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ArgumentError("n schedule must be strictly increasing")
        if self.paths < 100:
            raise ArgumentError("paths must be >= 100")
        if not (self.t >= 0 and math.isfinite(self.t)):
            raise DomainError("t must be finite and >= 0")

    def kernel(self) -> KernelSpec:
        params = make_params(self.alpha) if self.variant is KernelVariant.TRICOMI_ALPHA else None
        return KernelSpec(self.variant, self.t, self.x, params)

    def mollifiers(self) -> list[noise.MollifierSpec]:
        return [noise.MollifierSpec(self.family, n) for n in self.n_values]


@dataclass
class EmpiricalCheck:
    n: int
    r_n: float
    analytic: float
    empirical: float
    sigma: float
    paths: int
    dx: float

    @property
    def within_4sigma(self) -> bool:
        return abs(self.empirical - self.analytic) <= 4.0 * self.sigma


@dataclass
class ConvergenceReport:
    study: str
    variant: KernelVariant
    family: noise.MollifierFamily
    hurst: float | None
    n_values: list[int]
    r_values: list[float]
    variances: list[float]
    gaps: list[float]  # inf when the limit is not square integrable
    limit: float | noise.Variance
    verdict: Verdict
    fitted_log_slope: float = math.nan
    r_squared: float = math.nan
    aitken_limit: float | None = None
    empirical: list[EmpiricalCheck] = field(default_factory=list)

    def curve(self) -> noise.VarianceCurve:
        return noise.VarianceCurve(self.n_values, self.variances, self.limit,
                                   self.fitted_log_slope, self.r_values)

    def rows(self):
        for row in zip(self.n_values, self.r_values, self.variances, self.gaps):
            yield row

    def to_dict(self) -> dict:
        return {
            "study": self.study,
            "variant": self.variant.value,
            "family": self.family.value,
            "hurst": self.hurst,
            "limit": self.limit.value if isinstance(self.limit, noise.Variance) else self.limit,
            "verdict": self.verdict.value,
            "fitted_log_slope": _json_float(self.fitted_log_slope),
            "r_squared": _json_float(self.r_squared),
            "aitken_limit": self.aitken_limit,
            "n_values": self.n_values,
            "r_values": self.r_values,
            "variances": self.variances,
            "gaps": [_json_float(g) for g in self.gaps],
            "empirical": [dict(asdict(c), within_4sigma=c.within_4sigma) for c in self.empirical],
        }


def _json_float(v):
    return None if v is None or not math.isfinite(v) else v


# ---------------------------------------------------------------------------
# curve diagnostics


def aitken(seq) -> np.ndarray:
    """Aitken delta-squared extrapolates of consecutive triples."""
    a = np.asarray(seq, dtype=float)
    if a.size < 3:
        return np.empty(0)
    d2 = a[2:] - 2.0 * a[1:-1] + a[:-2]
    with np.errstate(divide="ignore", invalid="ignore"):
        est = np.where(d2 != 0, a[2:] - (a[2:] - a[1:-1]) ** 2 / d2, a[2:])
    return est


def finite_limit_detected(seq, ratio_max: float = 0.9, agree: float = 0.01) -> float | None:
    """Limit estimate if the tail behaves geometrically, else None.

    A finite limit is accepted when the last three increment ratios lie in
    [0, ratio_max] and the last two Aitken extrapolates agree within
    ``agree`` relative.
    """
    a = np.asarray(seq, dtype=float)
    if a.size < 5:
        return None
    d = np.diff(a)
    if np.any(d[-4:] == 0):
        return float(a[-1]) if np.all(d[-4:] == 0) else None
    ratios = d[-3:] / d[-4:-1]
    if not np.all((ratios >= 0) & (ratios <= ratio_max)):
        return None
    est = aitken(a)
    e1, e2 = est[-2], est[-1]
    if not (np.isfinite(e1) and np.isfinite(e2)):
        return None
    if abs(e2 - e1) > agree * max(abs(e2), 1e-300):
        return None
    return float(e2)


def log_fit(r_values, variances) -> tuple[float, float, float]:
    """Least-squares fit variance = a ln(1/r) + b; returns (a, b, R^2)."""
    x = np.log(1.0 / np.asarray(r_values, dtype=float))
    y = np.asarray(variances, dtype=float)
    if x.size < 3:
        return math.nan, math.nan, math.nan
    res = stats.linregress(x, y)
    return float(res.slope), float(res.intercept), float(res.rvalue ** 2)


def _convergence_verdict(n_values, gaps, limit, tol) -> Verdict:
    if len(n_values) < 2:
        return Verdict.NONE
    if limit == 0:
        return Verdict.CONVERGES if gaps[-1] == 0 else Verdict.INCONCLUSIVE
    return Verdict.CONVERGES if gaps[-1] < tol * limit else Verdict.INCONCLUSIVE


# ---------------------------------------------------------------------------
# empirical cross-checks


def _empirical_indices(r_values: list[float], r_min: float) -> list[int]:
    ok = [i for i, r in enumerate(r_values) if r >= r_min]
    if not ok:
        return []
    picks = {ok[0], ok[len(ok) // 2], ok[-1]}
    return sorted(picks)


def empirical_checks(cfg: StudyConfig, kernel: KernelSpec, mollifiers, analytic,
                     hurst: float = 0.5) -> list[EmpiricalCheck]:
    """Monte Carlo variances of sum f_n(mid_i) dB_i at up to three schedule points.

    All points share one grid and one set of paths (path k uses seed + k).
    The grid covers the largest fattened support only: the integrands vanish
    outside it, so this restriction is exact.  It must resolve every chosen
    mollifier with at least CELLS_PER_RADIUS cells per radius.
    """
    lo, hi = kernel.support()
    r_values = [m.radius for m in mollifiers]
    max_cells = WHITE_NOISE_MAX_CELLS if hurst == 0.5 else noise.MAX_FBM_CELLS
    span0 = (hi - lo) + 2.0 * max(r_values)
    r_min = CELLS_PER_RADIUS * span0 / max_cells
    idx = _empirical_indices(r_values, r_min)
    if not idx or kernel.t == 0:
        return []
    r_small = min(r_values[i] for i in idx)
    dx = r_small / CELLS_PER_RADIUS
    r_big = max(r_values[i] for i in idx)
    a, b = lo - r_big, hi + r_big
    cells = int(math.ceil((b - a) / dx))
    mids = a + (np.arange(cells) + 0.5) * dx
    f = np.stack([noise.mollified_kernel(kernel, mollifiers[i], mids) for i in idx])
    sums = noise.wiener_sums(f, (cells, dx), cfg.paths, cfg.seed, hurst)
    sums = sums.reshape(cfg.paths, len(idx))
    out = []
    for j, i in enumerate(idx):
        x2 = sums[:, j] ** 2
        emp = float(np.mean(x2))
        var = float(analytic[i])
        out.append(EmpiricalCheck(cfg.n_values[i], r_values[i], var, emp,
                                  var * math.sqrt(2.0 / cfg.paths), cfg.paths, dx))
    return out


def _map(cfg: StudyConfig, func, items):
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(func, items))
    return [func(i) for i in items]


# ---------------------------------------------------------------------------
# studies


def _white_noise_curve(cfg: StudyConfig):
    kernel = cfg.kernel()
    mollifiers = cfg.mollifiers()
    moments = _map(cfg, lambda m: noise.mollified_l2(kernel, m), mollifiers)
    variances = [m.variance for m in moments]
    gaps = [math.inf if m.gap is None else m.gap for m in moments]
    return kernel, mollifiers, variances, gaps, noise.l2_variance(kernel)


def _report(cfg, study, mollifiers, variances, gaps, limit, verdict, **extra) -> ConvergenceReport:
    return ConvergenceReport(study, cfg.variant, cfg.family, cfg.hurst, list(cfg.n_values),
                             [m.radius for m in mollifiers], variances, gaps, limit, verdict, **extra)


def study_tricomi_convergence(cfg: StudyConfig) -> ConvergenceReport:
    """White-noise study of the degenerate kernel without lower-order term."""
    if cfg.variant is not KernelVariant.TRICOMI_ALPHA:
        raise ArgumentError("study_tricomi_convergence needs the tricomi-alpha kernel")
    kernel, mollifiers, variances, gaps, limit = _white_noise_curve(cfg)
    verdict = _convergence_verdict(cfg.n_values, gaps, limit, cfg.tolerance)
    emp = empirical_checks(cfg, kernel, mollifiers, variances) if cfg.empirical else []
    return _report(cfg, "tricomi-convergence", mollifiers, variances, gaps, limit, verdict,
                   aitken_limit=finite_limit_detected(variances), empirical=emp)


def study_lower_order_divergence(cfg: StudyConfig) -> ConvergenceReport:
    """White-noise study of a kernel that may fail to be square integrable.

    DIVERGES requires a strictly increasing curve, a logarithmic fit with
    R^2 > 0.99 and no finite limit detectable by Aitken extrapolation.
    Kernels with a finite limit (wave controls) are classified as in the
    convergence study.
    """
    kernel, mollifiers, variances, gaps, limit = _white_noise_curve(cfg)
    r_values = [m.radius for m in mollifiers]
    slope, _, r2 = log_fit(r_values, variances)
    extrap = finite_limit_detected(variances)
    if len(variances) < 2:
        verdict = Verdict.NONE
    elif limit is noise.INFINITE:
        increasing = all(b > a for a, b in zip(variances, variances[1:]))
        verdict = (Verdict.DIVERGES if increasing and r2 > 0.99 and extrap is None
                   else Verdict.INCONCLUSIVE)
    else:
        verdict = _convergence_verdict(cfg.n_values, gaps, limit, cfg.tolerance)
    emp = empirical_checks(cfg, kernel, mollifiers, variances) if cfg.empirical else []
    return _report(cfg, "lower-order-divergence", mollifiers, variances, gaps, limit, verdict,
                   fitted_log_slope=slope, r_squared=r2, aitken_limit=extrap, empirical=emp)


def study_fractional_restoration(cfg: StudyConfig) -> ConvergenceReport:
    """Fractional-noise study of the lower-order kernel (H-norm variances)."""
    if cfg.hurst is None or not (0.5 < cfg.hurst < 1.0):
        raise DomainError("fractional restoration needs a Hurst index in (0.5, 1)")
    if cfg.variant not in (KernelVariant.TRICOMI_LOWER, KernelVariant.WAVE):
        raise ArgumentError("fractional restoration supports tricomi-lower (and wave) kernels")
    kernel = cfg.kernel()
    mollifiers = cfg.mollifiers()
    moments = _map(cfg, lambda m: noise.mollified_h(kernel, m, cfg.hurst), mollifiers)
    variances = [m.variance for m in moments]
    gaps = [m.gap for m in moments]
    limit = noise.h_norm_variance(kernel, cfg.hurst) if kernel.t > 0 else 0.0
    verdict = _convergence_verdict(cfg.n_values, gaps, limit, cfg.tolerance)
    emp = empirical_checks(cfg, kernel, mollifiers, variances, cfg.hurst) if cfg.empirical else []
    return _report(cfg, "fractional-restoration", mollifiers, variances, gaps, limit, verdict,
                   aitken_limit=finite_limit_detected(variances), empirical=emp)


def study_wave_comparison(cfg: StudyConfig) -> ConvergenceReport:
    """White-noise study of the non-degenerate wave kernels."""
    if cfg.variant not in (KernelVariant.WAVE, KernelVariant.WAVE_LOWER):
        raise ArgumentError("wave comparison needs the wave or wave-lower kernel")
    kernel, mollifiers, variances, gaps, limit = _white_noise_curve(cfg)
    verdict = _convergence_verdict(cfg.n_values, gaps, limit, cfg.tolerance)
    emp = empirical_checks(cfg, kernel, mollifiers, variances) if cfg.empirical else []
    return _report(cfg, "wave-comparison", mollifiers, variances, gaps, limit, verdict,
                   aitken_limit=finite_limit_detected(variances), empirical=emp)


STUDIES = {
    "convergence": study_tricomi_convergence,
    "divergence": study_lower_order_divergence,
    "fractional": study_fractional_restoration,
    "wave": study_wave_comparison,
}
