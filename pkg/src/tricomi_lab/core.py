"""Scalar constants, the four solution kernels and the (Y, Z) samplers.

Normalisation note: the density of Y on (0, 1) is c_hat (1 - y^2)^(-gamma)
with c_hat = 2 Gamma(3/2 - gamma) / (sqrt(pi) Gamma(1 - gamma)).  The constant
without the leading factor 2 integrates to 1/2 on (0, 1), and with it the
integral formula at alpha = 0 gives half of d'Alembert's solution.  The
literal constant stays available as ``TricomiParams.c_literal`` so the
discrepancy can be reproduced (see ``TricomiParams.with_literal_constant``).
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError
from .specialfn import bessel_j0, gamma_fn


@dataclass(frozen=True)
class TricomiParams:
    alpha: float
    gamma: float
    c_hat: float
    L: float
    xi_coeff: float

    @property
    def beta(self) -> float:
        """Exponent of xi(t) = t^beta / beta."""
        return self.alpha / 2.0 + 1.0

    @property
    def c_literal(self) -> float:
        return 0.5 * self.c_hat

    def with_literal_constant(self) -> "TricomiParams":
        """Copy using the un-doubled density constant (integrates to 1/2)."""
        return dataclasses.replace(self, c_hat=self.c_literal)


def make_params(alpha: float) -> TricomiParams:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0:
        raise DomainError(f"alpha must be finite and >= 0, got {alpha}")
    g = alpha / (2.0 * (alpha + 2.0))
    c_hat = 2.0 * gamma_fn(1.5 - g) / (math.sqrt(math.pi) * gamma_fn(1.0 - g))
    return TricomiParams(
        alpha=alpha,
        gamma=g,
        c_hat=c_hat,
        L=3.0 - 2.0 * g,
        xi_coeff=1.0 / (alpha / 2.0 + 1.0),
    )


def xi(params: TricomiParams, t):
    """xi(t) = t^(alpha/2 + 1) / (alpha/2 + 1)."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("xi is defined for finite t >= 0")
    val = params.xi_coeff * arr ** params.beta
    return float(val) if np.ndim(val) == 0 else val


class KernelVariant(enum.Enum):
    TRICOMI_ALPHA = "tricomi-alpha"
    TRICOMI_LOWER = "tricomi-lower"
    WAVE = "wave"
    WAVE_LOWER = "wave-lower"


@dataclass(frozen=True)
class KernelSpec:
    """One solution kernel at a fixed evaluation point (t, x).

    ``solution(t, x) = integral of kernel(y) * datum(y) dy`` for every variant.
    """

    variant: KernelVariant
    t: float
    x: float = 0.0
    params: TricomiParams | None = None

    def __post_init__(self):
        if not (math.isfinite(self.t) and self.t >= 0):
            raise DomainError(f"t must be finite and >= 0, got {self.t}")
        if self.variant is KernelVariant.TRICOMI_ALPHA and self.params is None:
            raise DomainError("TRICOMI_ALPHA kernel needs TricomiParams")

    @property
    def half_width(self) -> float:
        if self.variant is KernelVariant.TRICOMI_ALPHA:
            return xi(self.params, self.t)
        if self.variant is KernelVariant.TRICOMI_LOWER:
            return 0.5 * self.t * self.t
        return self.t

    def support(self) -> tuple[float, float]:
        h = self.half_width
        return self.x - h, self.x + h

    @property
    def singular_exponents(self) -> tuple[float, float]:
        """Exponents e such that kernel ~ dist^(-e) at the (left, right) end."""
        if self.variant is KernelVariant.TRICOMI_ALPHA:
            return self.params.gamma, self.params.gamma
        if self.variant is KernelVariant.TRICOMI_LOWER:
            return 0.5, 0.0
        return 0.0, 0.0

    def values_from_distances(self, dl, dr):
        """Kernel values given distances to the left/right support endpoints.

        Used by quadrature rules that deliver exact endpoint distances; no
        support check is done here.
        """
        dl = np.asarray(dl, dtype=float)
        dr = np.asarray(dr, dtype=float)
        v = self.variant
        if v is KernelVariant.TRICOMI_ALPHA:
            p = self.params
            h = self.half_width
            # 1 - ((y - x)/h)^2 = dl * dr / h^2
            return (self.t / (2.0 * h)) * p.c_hat * (dl * dr / (h * h)) ** (-p.gamma)
        if v is KernelVariant.TRICOMI_LOWER:
            return 0.5 / np.sqrt(dl)
        if v is KernelVariant.WAVE:
            return np.full(np.broadcast(dl, dr).shape, 0.5)
        # WAVE_LOWER: y - x = dl - t,  t^2 - (x - y)^2 = dl * dr
        arg = 0.5 * np.sqrt(np.maximum(dl * dr, 0.0))
        return 0.5 * np.exp(0.5 * (dl - self.t)) * bessel_j0(arg)


def kernel_eval(spec: KernelSpec, y):
    """Kernel value at y (scalar or array); zero outside the support.

    Raises SingularityError when y hits a singular endpoint.
    """
    y = np.asarray(y, dtype=float)
    lo, hi = spec.support()
    el, er = spec.singular_exponents
    if (el > 0 and np.any(y == lo)) or (er > 0 and np.any(y == hi)):
        raise SingularityError(f"{spec.variant.value} kernel is singular at the support endpoint")
    v = spec.variant
    if v is KernelVariant.TRICOMI_ALPHA:
        inside = (y > lo) & (y < hi)
    elif v is KernelVariant.TRICOMI_LOWER:
        inside = (y > lo) & (y <= hi)
    else:
        inside = (y >= lo) & (y <= hi)
    out = np.zeros_like(y)
    if spec.t > 0 and np.any(inside):
        yi = y[inside]
        out[inside] = spec.values_from_distances(yi - lo, hi - yi)
    return float(out) if out.ndim == 0 else out


class YSampler:
    """Exact rejection sampler for the density c_hat (1 - y^2)^(-gamma) on (0, 1).

    Proposal density (1 - gamma)(1 - y)^(-gamma), drawn as
    y = 1 - u^(1/(1 - gamma)); accept with probability (1 + y)^(-gamma).
    Each instance owns its generator and must not be shared between threads.
    """

    def __init__(self, params: TricomiParams, seed=None):
        if not (0.0 <= params.gamma < 0.5):
            raise DomainError("gamma must lie in [0, 1/2)")
        self.params = params
        self.rng = np.random.default_rng(seed)

    def sample(self, size: int) -> np.ndarray:
        g = self.params.gamma
        out = np.empty(size)
        filled = 0
        while filled < size:
            need = size - filled
            m = int(need * 2.0 ** g * 1.05) + 16
            u = self.rng.random(m)
            y = 1.0 - u ** (1.0 / (1.0 - g))
            ok = (y > 0.0) & (y < 1.0)
            if g > 0:
                ok &= self.rng.random(m) < (1.0 + y) ** (-g)
            acc = y[ok][:need]
            out[filled:filled + acc.size] = acc
            filled += acc.size
        return out


def sample_y(sampler: YSampler) -> float:
    return float(sampler.sample(1)[0])


def sample_z(rng: np.random.Generator, size=None):
    """Rademacher signs: +1 or -1 with probability 1/2 each."""
    z = 2.0 * rng.integers(0, 2, size=size) - 1.0
    return float(z) if size is None else z
