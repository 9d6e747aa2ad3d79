import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nhqa.model import make_params
from nhqa.schedule import ScheduleKind, make_schedule


@pytest.fixture
def nonlinear():
    return make_schedule("nonlinear", make_params(2, 0.01, 1e3, 20))


@pytest.fixture
def linear():
    return make_schedule("linear", make_params(2, 0.01, 1e3, 20))


def test_linear_endpoints(linear):
    assert linear.coupling(0.0) == complex(2, 0.01)
    assert linear.coupling(1e3) == 0


def test_clamped_beyond_tau(linear, nonlinear):
    for s in (linear, nonlinear):
        assert s.coupling(1e3) == 0
        assert s.coupling(1.5e3) == 0
        assert np.all(s.coupling(np.array([1e3, 2e3, 1e6])) == 0)


def test_negative_time_rejected(linear):
    with pytest.raises(ValueError):
        linear.coupling(-1.0)


def test_nonlinear_midpoint(nonlinear):
    assert nonlinear.coupling(500.0) == pytest.approx(complex(1, 0.005), rel=1e-15)


def test_nonlinear_needs_dissipation():
    with pytest.raises(ValueError):
        make_schedule("nonlinear", make_params(2, 0.0, 1e3, 20))


def test_kind_parsing():
    p = make_params(2, 0.01, 1, 2)
    assert make_schedule(ScheduleKind.LINEAR, p).kind is ScheduleKind.LINEAR
    with pytest.raises(ValueError):
        make_schedule("cubic", p)


def test_profile_only_for_nonlinear(linear):
    with pytest.raises(ValueError):
        linear.profile_f(0.5)


@pytest.mark.parametrize("delta", [0.5, 0.01, 1e-4, 7.5e-5])
def test_profile_boundaries(delta):
    s = make_schedule("nonlinear", make_params(2, delta, 5.5e4, 40))
    assert abs(s.profile_f(0.0)) <= 1e-12
    assert abs(s.profile_f(5.5e4) - 1.0) <= 1e-12
    assert abs(s.profile_f(2.75e4) - 0.5) <= 1e-12


def test_profile_three_quarters(nonlinear):
    expected = 0.5 + 0.005 * math.tan(math.atan(100) / 2)
    assert nonlinear.profile_f(750.0) == pytest.approx(expected, rel=1e-14)
    assert nonlinear.profile_f(750.0) == pytest.approx(0.50495, abs=1e-5)


def test_profile_rejects_outside(nonlinear):
    for t in (-1.0, 1001.0):
        with pytest.raises(ValueError):
            nonlinear.profile_f(t)


def test_rate_boundaries(nonlinear):
    d, beta, tau = 0.01, math.atan(100), 1e3
    assert nonlinear.profile_rate(0.5) == pytest.approx(beta * d / tau, rel=1e-15)
    assert nonlinear.profile_rate(0.0) == pytest.approx(beta * d / tau * (1 + 1 / d**2), rel=1e-14)
    assert np.all(nonlinear.profile_rate(np.linspace(0, 1, 50)) > 0)


@pytest.mark.parametrize("delta", [0.3, 0.01, 1e-4])
def test_rate_matches_finite_difference(delta):
    tau = 5e4
    s = make_schedule("nonlinear", make_params(2, delta, tau, 40))
    dt = tau * 1e-6
    for t in np.linspace(0.01 * tau, 0.99 * tau, 101):
        fd = (s.profile_f(t + dt) - s.profile_f(t - dt)) / (2 * dt)
        assert fd == pytest.approx(s.profile_rate(s.profile_f(t)), rel=1e-6)


@pytest.mark.parametrize("delta", [0.3, 0.01, 1e-4])
def test_inverse_profile(delta):
    s = make_schedule("nonlinear", make_params(2, delta, 5e4, 40))
    f = np.linspace(0, 1, 202)[1:-1]
    np.testing.assert_allclose(s.profile_f(s.profile_time(f)), f, rtol=0, atol=1e-10)


@pytest.mark.parametrize("kind", ["linear", "nonlinear"])
@pytest.mark.parametrize("delta", [0.0, 1e-4, 0.05])
def test_monotone_and_dissipative(kind, delta):
    if kind == "nonlinear" and delta == 0:
        return
    s = make_schedule(kind, make_params(2, delta, 1e3, 20))
    t = np.linspace(0, 1e3, 4001)
    mag = np.abs(s.coupling(t))
    assert np.all(np.diff(mag) < 0)
    assert np.all(s.coupling(t).imag >= 0)
    if kind == "nonlinear":
        assert np.all(np.diff(s.profile_f(t)) > 0)


def test_rational_form_near_end():
    # 1 - f must stay accurate where the direct tangent loses all digits
    delta, tau = 1e-4, 5e4
    s = make_schedule("nonlinear", make_params(2, delta, tau, 40))
    beta = math.atan(1 / delta)
    t = tau * (1 - 1e-9)
    x = 2 * t / tau - 1
    tt = math.tan(beta * (1 - x))
    exact = 0.5 - 0.5 * delta * (1 - delta * tt) / (delta + tt)
    assert s.one_minus_f(t) == pytest.approx(exact, rel=1e-10)
    assert s.one_minus_f(t) > 0


@given(st.floats(0, 1e3))
def test_coupling_integral_derivative(t):
    s = make_schedule("nonlinear", make_params(2, 0.01, 1e3, 20))
    lo, hi = max(t - 1e-3, 0), min(t + 1e-3, 1e3)
    fd = (s.coupling_integral(hi) - s.coupling_integral(lo)) / (hi - lo)
    mid = s.coupling(0.5 * (lo + hi))
    assert abs(fd - mid) <= 1e-6 * max(1.0, abs(mid))


@pytest.mark.parametrize("kind", ["linear", "nonlinear"])
def test_coupling_integral_against_quadrature(kind):
    from scipy.integrate import quad

    s = make_schedule(kind, make_params(2, 1e-3, 1e3, 20))
    for t in (0.0, 123.0, 500.0, 999.0, 1e3):
        re = quad(lambda u: s.coupling(u).real, 0, t, epsabs=1e-12, epsrel=1e-12, limit=200)[0]
        im = quad(lambda u: s.coupling(u).imag, 0, t, epsabs=1e-12, epsrel=1e-12, limit=200)[0]
        assert s.coupling_integral(t) == pytest.approx(complex(re, im), rel=1e-10, abs=1e-10)
