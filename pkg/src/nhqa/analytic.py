"""
Closed-form solution of the linear anneal through Weber's equation.

With c_a = U_a exp((i/2) int eps dt) the two-level problem for the linear
schedule becomes Weber's equation in

    z(t) = e^{i pi/4} (gamma (tau - t) - cos a) / sqrt(gamma),
    nu   = sin^2 a / (4 gamma),

solved by U0 = A D_{-i nu}(z) + B D_{-i nu}(-z) and
U1 = sqrt(i nu) (B D_{-i nu - 1}(-z) - A D_{-i nu - 1}(z)).  This module is
the independent oracle for the time integrator.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

from .errors import AsymptoticRegimeWarning
from .special import complex_gamma, parabolic_cylinder_d

__all__ = [
    "WeberParams",
    "WeberSolution",
    "weber_params",
    "weber_solution",
    "weber_transition_probability",
    "asymptotic_ratio",
    "asymptotic_transition_probability",
    "landau_zener_probability",
    "nqa_time_estimate",
    "ASYMPTOTIC_MIN_Z0",
]

_E_I_PI_4 = complex(1.0, 1.0) / math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
ASYMPTOTIC_MIN_Z0 = 5.0


@dataclass(frozen=True)
class WeberParams:
    nu: complex
    z0: complex
    z_tau: complex
    a_const: complex
    b_const: complex
    sqrt_gamma: complex
    params: object

    def z_at(self, t):
        p = self.params
        return _E_I_PI_4 * (p.gamma * (p.tau - t) - p.cos_alpha) / self.sqrt_gamma


@dataclass(frozen=True)
class WeberSolution:
    u0: complex
    u1: complex
    z: complex


def weber_params(params):
    """
    Weber variables and integration constants for the linear schedule.

    A and B are normalized so that (U0, U1)(z0) = (1, 0).
    """
    if params.delta < 0:
        raise ValueError("delta must be non-negative")
    gamma = params.gamma
    nu = params.sin_alpha**2 / (4.0 * gamma)
    if nu == 0:
        raise ValueError("nu = 0: no coupling between the levels")
    sqrt_gamma = cmath.sqrt(gamma)
    z0 = _E_I_PI_4 * (gamma * params.tau - params.cos_alpha) / sqrt_gamma
    z_tau = -_E_I_PI_4 * params.cos_alpha / sqrt_gamma
    order = -1j * nu
    scale = complex_gamma(1.0 + 1j * nu) / _SQRT_2PI
    a_const = parabolic_cylinder_d(order - 1.0, -z0) * scale
    b_const = parabolic_cylinder_d(order - 1.0, z0) * scale
    return WeberParams(nu, z0, z_tau, a_const, b_const, sqrt_gamma, params)


def _u_pair(wp, z):
    order = -1j * wp.nu
    a, b = wp.a_const, wp.b_const
    u0 = a * parabolic_cylinder_d(order, z) + b * parabolic_cylinder_d(order, -z)
    u1 = cmath.sqrt(1j * wp.nu) * (
        b * parabolic_cylinder_d(order - 1.0, -z) - a * parabolic_cylinder_d(order - 1.0, z)
    )
    return u0, u1


def weber_solution(wp, t, params=None):
    """U0, U1 at time t in [0, tau]."""
    params = params or wp.params
    if not 0.0 <= t <= params.tau:
        raise ValueError("t must lie in [0, tau]")
    z = wp.z_at(t)
    u0, u1 = _u_pair(wp, z)
    return WeberSolution(u0, u1, z)


def weber_transition_probability(wp):
    """P_tau(tau) = 1 / (1 + |U0(z_tau)|^2 / |U1(z_tau)|^2)."""
    u0, u1 = _u_pair(wp, wp.z_tau)
    if u1 == 0:
        return 0.0
    ratio = abs(u0) / abs(u1)
    return 1.0 / (1.0 + ratio * ratio)


def asymptotic_ratio(wp):
    """
    Large-|z0| estimate of U0(z_tau) / U1(z_tau).

    A diagnostic only; warns with ``AsymptoticRegimeWarning`` when
    |z0| < 5.
    """
    nu, z0, zt = wp.nu, wp.z0, wp.z_tau
    if abs(z0) < ASYMPTOTIC_MIN_Z0:
        warnings.warn(
            f"|z0| = {abs(z0):.3g} < {ASYMPTOTIC_MIN_Z0}: asymptotic ratio unreliable",
            AsymptoticRegimeWarning,
            stacklevel=2,
        )
    num = cmath.exp(-0.5 * math.pi * nu - 0.5 * zt * zt) * complex_gamma(1.0 + 1j * nu)
    den = cmath.sqrt(2.0 * math.pi * nu * 1j) * (1.0 - cmath.exp(-0.5 * z0 * z0) / (_SQRT_2PI * z0))
    return -num / den


def asymptotic_transition_probability(wp):
    r = abs(asymptotic_ratio(wp))
    return 1.0 / (1.0 + r * r)


def landau_zener_probability(params):
    """1 - exp(-2 pi tau / (g N)), Hermitian runs only."""
    if params.delta != 0:
        raise ValueError("the Landau-Zener limit needs delta = 0")
    nu = params.tau / (params.g * params.n_items)
    return -math.expm1(-2.0 * math.pi * nu)


def nqa_time_estimate(params):
    """Rough running time (g^2 / delta) ln N of the dissipative search."""
    if not params.delta > 0:
        raise ValueError("the estimate needs delta > 0")
    return params.g**2 / params.delta * params.log2_n * math.log(2.0)
