from __future__ import annotations

import math

import numpy as np
import pytest

from tricomi_lab import xi_fixed_point as X
from tricomi_lab.core import make_params
from tricomi_lab.errors import ArgumentError, DomainError, NonContractionError


def perturbed(g: X.C1Function, eps: float) -> X.C1Function:
    t = g.grid
    s, c = np.sin(t), np.cos(t)
    return X.C1Function(t, g.values * (1 + eps * s), g.derivative_values * (1 + eps * s) + g.values * eps * c)


def power(t, p, c=1.0):
    return X.C1Function(t, c * t ** p, c * p * t ** (p - 1))


def test_c1function_validation():
    with pytest.raises(ArgumentError):
        X.C1Function([0.0, 1.0], [0.0, 1.0], [1.0, 1.0])
    with pytest.raises(ArgumentError):
        X.C1Function([0.1, 0.2, 0.3], [0, 0, 0], [0, 0, 0])
    with pytest.raises(ArgumentError):
        X.C1Function([0.0, 0.1, 0.3], [0, 0, 0], [0, 0, 0])
    with pytest.raises(DomainError):
        X.uniform_grid(-1.0)


def test_ode_residuals_examples():
    p0 = make_params(0)
    assert X.ode_residuals(p0, X.xi_function(p0, 1.0)) == (0.0, 0.0)
    p2 = make_params(2)
    r1, r2 = X.ode_residuals(p2, X.xi_function(p2, 1.0, 257))
    assert r1 < 1e-12 and r2 < 1e-12  # centred differences are exact on t^2/2
    t = X.uniform_grid(1.0, 257)
    r1, r2 = X.ode_residuals(p0, power(t, 2))
    assert max(r1, r2) > 0.1


def test_apply_T_closed_forms():
    p0 = make_params(0)
    g = X.xi_function(p0, 1.0, 129)
    out = X.apply_T(p0, g)
    assert np.max(np.abs(out.values - g.grid)) < 1e-14
    p2 = make_params(2)
    g = X.xi_function(p2, 1.0, 129)
    out = X.apply_T(p2, g)
    assert np.max(np.abs(out.values - g.grid ** 2 / 2)) < 1e-14
    assert X.sup_derivative_gap(out, g) < 1e-13


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0, 5.0, 7.3])
def test_xi_is_fixed_point_to_second_order(alpha):
    p = make_params(alpha)
    # the fixed-point constant L = (2 beta + 1) / beta equals 3 - 2 gamma
    assert p.L == pytest.approx((2 * p.beta + 1) / p.beta, rel=1e-15)
    gaps, dts = [], []
    for n in (257, 513, 1025):
        g = X.xi_function(p, 1.0, n)
        gaps.append(X.sup_derivative_gap(X.apply_T(p, g), g))
        dts.append(g.dt)
    scaled = [e / d ** 2 for e, d in zip(gaps, dts)]
    assert all(e < 1e-12 or s <= 1.05 * scaled[0] for e, s in zip(gaps, scaled))


def test_T_maps_into_space_x(rng):
    p = make_params(3.0)
    t = X.uniform_grid(0.7, 201)
    for _ in range(5):
        a, q = rng.uniform(0.2, 3), rng.uniform(1.0, 3.0)
        out = X.apply_T(p, power(t, q, a))
        assert out.in_space_x() and out.values[0] == 0.0


def test_T_is_positively_homogeneous():
    p = make_params(2)
    t = X.uniform_grid(0.5, 257)
    g = power(t, 1.5)
    a, b = X.apply_T(p, g), X.apply_T(p, g.scaled(-1.5))
    np.testing.assert_allclose(b.derivative_values, 1.5 * a.derivative_values, rtol=1e-14, atol=1e-15)


def test_every_multiple_of_xi_is_a_fixed_point():
    p = make_params(2)
    g = X.xi_function(p, 0.5, 513)
    for c in (0.5, 1.5, 3.0):
        out = X.apply_T(p, g.scaled(c))
        assert X.sup_derivative_gap(out, g.scaled(c)) < 1e-12


def test_seed_scaling_carries_through_iterates():
    """Iterates from 1.5 g0 are exactly 1.5 times the iterates from g0."""
    p = make_params(2)
    g0 = perturbed(X.xi_function(p, 0.5, 257), 0.2)
    a, b = g0, g0.scaled(1.5)
    for _ in range(20):
        a, b = X.apply_T(p, a), X.apply_T(p, b)
    np.testing.assert_allclose(b.derivative_values, 1.5 * a.derivative_values, rtol=1e-13)


def test_fitted_ratio_is_dilation_invariant():
    """Self-similarity: the contraction ratio does not depend on the horizon T."""
    p = make_params(2)
    ratios = []
    for T in (0.5, 0.125):
        g0 = perturbed(X.xi_function(p, T, 513), 0.01)
        _, rep = X.iterate_to_fixed_point(p, g0, tol=1e-10, max_iter=3000, growth_limit=10 ** 9)
        assert rep.converged
        ratios.append(rep.fitted_ratio)
    assert ratios[0] / ratios[1] == pytest.approx(1.0, abs=0.01)


def test_iterate_from_xi_converges_immediately():
    p = make_params(2)
    g, rep = X.iterate_to_fixed_point(p, X.xi_function(p, 0.5))
    assert rep.converged and rep.iterates == 0
    assert rep.sup_derivative_gaps[0] < 1e-8


def test_non_contraction_is_reported_with_horizon():
    p = make_params(2)
    g0 = perturbed(X.xi_function(p, 0.5, 257), 0.2)
    with pytest.raises(NonContractionError) as info:
        X.iterate_to_fixed_point(p, g0)
    assert info.value.diagnostics["T"] == 0.5
    rep = info.value.diagnostics["report"]
    assert not rep.converged and rep.iterates > 0


def test_iterate_validates_seed():
    p = make_params(1)
    t = X.uniform_grid(1.0, 33)
    with pytest.raises(DomainError):
        X.iterate_to_fixed_point(p, X.C1Function(t, t + 1.0, np.ones_like(t)))
    with pytest.raises(ArgumentError):
        X.iterate_to_fixed_point(p, X.xi_function(p, 1.0, 33), T=2.0)


def test_continuation_matches_single_interval():
    p = make_params(2)
    g0 = perturbed(X.xi_function(p, 0.5, 513), 0.01)
    tol = 1e-10
    kw = dict(tol=tol, max_iter=3000, growth_limit=10 ** 9)
    g1, r1 = X.iterate_to_fixed_point(p, g0, **kw)
    g2, r2 = X.continue_fixed_point(p, g0, 256, **kw)
    assert r1.converged and r2.converged
    assert X.sup_derivative_gap(g1, g2) < 10 * tol


def test_integral_identity_examples():
    p0 = make_params(0)
    g = X.xi_function(p0, 1.0, 1025)
    assert X.integral_identity_check(p0, g) <= 10 * g.dt ** 2
    p2 = make_params(2)
    g = X.xi_function(p2, 1.0, 1025)
    assert X.integral_identity_check(p2, g) <= 10 * g.dt ** 2
    t = X.uniform_grid(1.0, 1025)
    assert X.integral_identity_check(p0, power(t, 3)) > 0.1
    with pytest.raises(DomainError):
        X.integral_identity_check(p0, g, T=2.0)


def test_report_dict_round_trip():
    p = make_params(2)
    _, rep = X.iterate_to_fixed_point(p, X.xi_function(p, 0.5, 65))
    d = rep.to_dict()
    assert d["converged"] is True and d["T_horizon"] == 0.5
    assert math.isnan(d["fitted_ratio"])
