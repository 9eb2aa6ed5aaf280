"""Gamma, Beta and Bessel J0 with documented accuracy.

Accuracy (checked in ``tests/test_specialfn.py``):

* ``gamma_fn``: relative error <= 1e-12 on [1e-3, 50].
* ``beta_fn``: inherits the Gamma tolerance; symmetric in its arguments.
* ``bessel_j0``: absolute error <= 1e-10 on |z| <= 30.  Power series for
  |z| <= 12 (64 terms; the first omitted term is below 1e-40), optimally
  truncated Hankel asymptotic expansion beyond.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError

J0_MAX_ARG = 30.0


@dataclass(frozen=True)
class AccuracySpec:
    abs_tol: float
    rel_tol: float
    domain: tuple[float, float]

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")


GAMMA_ACCURACY = AccuracySpec(abs_tol=np.inf, rel_tol=1e-12, domain=(1e-3, 50.0))
J0_ACCURACY = AccuracySpec(abs_tol=1e-10, rel_tol=np.inf, domain=(-J0_MAX_ARG, J0_MAX_ARG))


def _positive(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"{name} must be finite and > 0, got {x!r}")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def gamma_fn(x):
    """Gamma(x) for x > 0 (scalar or array)."""
    return _out(kernels.gamma(_positive(x, "x")))


def log_gamma(x):
    """log Gamma(x) for x > 0; use for arguments where Gamma overflows."""
    return _out(kernels.log_gamma(_positive(x, "x")))


def beta_fn(a, b):
    """Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).

    Arguments are sorted before evaluation so that ``beta_fn(a, b)`` and
    ``beta_fn(b, a)`` execute the identical operation sequence.
    """
    a = _positive(a, "a")
    b = _positive(b, "b")
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    s = lo + hi
    if np.all(s < 150.0):
        val = kernels.gamma(lo) * kernels.gamma(hi) / kernels.gamma(s)
    else:
        val = np.exp(kernels.log_gamma(lo) + kernels.log_gamma(hi) - kernels.log_gamma(s))
    return _out(val)


def bessel_j0(z):
    """Bessel function of the first kind of order zero for |z| <= 30."""
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(np.abs(arr) > J0_MAX_ARG):
        raise DomainError(f"bessel_j0 is only provided for |z| <= {J0_MAX_ARG}")
    return _out(kernels.j0(arr))

