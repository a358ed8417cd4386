"""Tests for the Riccati bound: coefficients, closed form, numeric cross-check."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radblow import (
    HypothesisError,
    RiccatiBound,
    blowup_time,
    coefficients,
    comparison_solution,
    emden_boundary,
    integrate_riccati_numeric,
    with_initial,
)


def test_coefficients_reference_values():
    bound = coefficients(3, 2.0, 1.0, 1.0, -1)
    assert bound.a == pytest.approx(3.0, rel=1e-14)  # n(n+1) / (2 R^(n+2))
    assert bound.b == pytest.approx(1.0, rel=1e-14)  # R^(n-N+2) M / (n-N+2)
    assert bound.beta == pytest.approx(math.sqrt(1.0 / 3.0), rel=1e-14)


def test_coefficients_zero_sink_without_attraction():
    for delta in (0, 1):
        bound = coefficients(3, 1.0, 2.0, 5.0, delta)
        assert bound.b == 0.0
        assert bound.beta == 0.0
        assert bound.a == pytest.approx(2.0 / (2.0 * 2.0**3), rel=1e-14)


def test_coefficients_rejects_bad_exponent():
    with pytest.raises(HypothesisError):
        coefficients(3, 1.0, 1.0, 1.0, -1)  # n = N - 2
    with pytest.raises(ValueError):
        coefficients(3, -1.0, 1.0, 1.0, 0)


def test_blowup_time_pressureless_form():
    # with b = 0, T = 1/(a H0) which is exactly 2 R^(n+2) / (n (n+1) H0)
    n, R, H0 = 1.0, 1.0, 0.25
    bound = with_initial(coefficients(3, n, R, 1.0, 0), H0)
    assert bound.T_star == pytest.approx(2.0 * R ** (n + 2) / (n * (n + 1) * H0), rel=1e-14)
    assert blowup_time(with_initial(coefficients(3, n, R, 1.0, 0), 0.0)) is None
    assert blowup_time(with_initial(coefficients(3, n, R, 1.0, 0), -1.0)) is None


def test_blowup_time_with_sink():
    bound = with_initial(RiccatiBound(a=1.0, b=1.0, beta=1.0), 2.0)
    assert bound.T_star == pytest.approx(math.log(3.0) / 2.0, rel=1e-13)
    # at or below the equilibrium there is no forced divergence
    assert blowup_time(RiccatiBound(a=1.0, b=1.0, beta=1.0, H0=1.0)) is None
    assert blowup_time(RiccatiBound(a=1.0, b=1.0, beta=1.0, H0=0.5)) is None


def test_comparison_solution_closed_form():
    bound = with_initial(RiccatiBound(a=1.0, b=1.0, beta=1.0), 2.0)
    assert comparison_solution(bound, 0.0) == pytest.approx(2.0, rel=1e-14)
    # u = e^(2t)/3, H = (1+u)/(1-u)
    u = math.exp(0.5) / 3.0
    assert comparison_solution(bound, 0.25) == pytest.approx((1 + u) / (1 - u), rel=1e-13)
    with pytest.raises(ValueError):
        comparison_solution(bound, bound.T_star)
    with pytest.raises(ValueError):
        comparison_solution(RiccatiBound(a=1.0, b=1.0, beta=1.0, H0=0.5), 0.1)


def test_comparison_solution_matches_numeric():
    bound = with_initial(RiccatiBound(a=1.0, b=1.0, beta=1.0), 2.0)
    series = integrate_riccati_numeric(1.0, 1.0, 2.0, t_max=0.25, dt=1e-5)
    assert not series.diverged
    assert series.last_time == pytest.approx(0.25, abs=1e-12)
    assert series.H[-1] == pytest.approx(comparison_solution(bound, 0.25), rel=1e-8)


def test_numeric_integration_diverges_past_pole():
    bound = with_initial(RiccatiBound(a=1.0, b=1.0, beta=1.0), 2.0)
    series = integrate_riccati_numeric(1.0, 1.0, 2.0, t_max=1.0, dt=1e-5)
    assert series.diverged
    # the numeric trajectory blows up essentially at the predicted pole
    assert series.last_time == pytest.approx(bound.T_star, abs=5e-3)
    assert np.all(np.diff(series.t) > 0)


def test_numeric_integration_stays_bounded_below_equilibrium():
    series = integrate_riccati_numeric(1.0, 1.0, 0.5, t_max=5.0, dt=1e-3)
    assert not series.diverged
    assert not series.nonfinite
    # H drifts monotonically down toward the stable equilibrium at -beta
    assert np.all(series.H <= 0.5 + 1e-12)
    assert series.H[-1] > -1.0 - 1e-6


def test_emden_static_without_field():
    traj = emden_boundary(delta=0, M=1.0, N=3, R0=2.0, t_max=1.0, dt=1e-3)
    np.testing.assert_allclose(traj.radius, 2.0, rtol=0, atol=1e-14)
    np.testing.assert_allclose(traj.speed, 0.0, atol=1e-14)


def test_emden_repulsive_expands():
    traj = emden_boundary(delta=1, M=1.0, N=3, R0=1.0, t_max=1.0, dt=1e-4)
    assert traj.radius[-1] > 1.0
    assert np.all(np.diff(traj.radius) >= 0)
    # first integral (1/2) s^2 + delta M / R is conserved
    inv = 0.5 * traj.speed**2 + 1.0 / traj.radius
    np.testing.assert_allclose(inv, inv[0], rtol=1e-10)


def test_emden_attractive_collapses_before_horizon():
    traj = emden_boundary(delta=-1, M=1.0, N=3, R0=1.0, t_max=5.0, dt=1e-4)
    # collapse reaches small radius and the integration stops before R < 0
    assert traj.radius[-1] < 0.05
    assert np.all(traj.radius > 0)
    assert traj.t[-1] < 5.0
