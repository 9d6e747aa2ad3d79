"""
Time profiles of the complex coupling h(t).

``linear``:    h(t) = gamma (tau - t),           gamma = (g + i delta) / tau
``nonlinear``: h(t) = (g + i delta)(1 - f(t)),   f(t) = 1/2 + (delta/2) tan(beta (2t/tau - 1))

with beta = arctan(1/delta).  The arctan profile dwells near h = h0/2, the
avoided crossing for g = 2.  Both are clamped to h = 0 for t >= tau.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ScheduleKind", "Schedule", "linear_schedule", "nonlinear_schedule", "make_schedule"]

# beyond this |2t/tau - 1| the tangent is evaluated in its rational form
_RATIONAL_SWITCH = 0.999


class ScheduleKind(enum.Enum):
    LINEAR = "linear"
    NONLINEAR = "nonlinear"


@dataclass(frozen=True)
class Schedule:
    kind: ScheduleKind
    params: object

    def __post_init__(self):
        if self.kind is ScheduleKind.NONLINEAR and not self.params.delta > 0:
            raise ValueError("the arctan schedule needs delta > 0 (delta = 0 makes f a step)")

    @property
    def beta(self):
        if self.kind is not ScheduleKind.NONLINEAR:
            return None
        return math.atan(1.0 / self.params.delta)

    # -- profile ---------------------------------------------------------

    def _check_profile(self):
        if self.kind is not ScheduleKind.NONLINEAR:
            raise ValueError("profile functions exist only for the nonlinear schedule")

    def _tangent_parts(self, t):
        # returns x = 2t/tau - 1 and T = tan(beta (1 - |x|)) for the rational form
        x = 2.0 * np.asarray(t, dtype=float) / self.params.tau - 1.0
        return x, np.tan(self.beta * (1.0 - np.abs(x)))

    def profile_f(self, t):
        """f(t) on [0, tau]; f(0) = 0, f(tau/2) = 1/2, f(tau) = 1."""
        self._check_profile()
        t_arr = np.asarray(t, dtype=float)
        if np.any((t_arr < 0) | (t_arr > self.params.tau)):
            raise ValueError("profile_f is defined on [0, tau] only")
        d = self.params.delta
        x, tt = self._tangent_parts(t_arr)
        direct = 0.5 + 0.5 * d * np.tan(self.beta * x)
        # tan(beta |x|) = (1 - d T) / (d + T) with T = tan(beta (1 - |x|))
        edge = 0.5 + 0.5 * np.sign(x) * d * (1.0 - d * tt) / (d + tt)
        out = np.where(np.abs(x) > _RATIONAL_SWITCH, edge, direct)
        return out if out.ndim else float(out)

    def one_minus_f(self, t):
        """1 - f(t), accurate as t -> tau where h(t) -> 0."""
        self._check_profile()
        d = self.params.delta
        t_arr = np.clip(np.asarray(t, dtype=float), 0.0, self.params.tau)
        x, tt = self._tangent_parts(t_arr)
        direct = 0.5 - 0.5 * d * np.tan(self.beta * x)
        near_end = tt * (1.0 + d * d) / (2.0 * (d + tt))
        near_start = 1.0 - near_end
        out = np.where(x > _RATIONAL_SWITCH, near_end, np.where(x < -_RATIONAL_SWITCH, near_start, direct))
        return out if out.ndim else float(out)

    def profile_rate(self, f_value):
        """df/dt = (beta delta / tau)(1 + ((1 - 2f)/delta)^2)."""
        self._check_profile()
        d = self.params.delta
        f_arr = np.asarray(f_value, dtype=float)
        if np.any((f_arr < 0) | (f_arr > 1)):
            raise ValueError("f must lie in [0, 1]")
        out = self.beta * d / self.params.tau * (1.0 + ((1.0 - 2.0 * f_arr) / d) ** 2)
        return out if out.ndim else float(out)

    def profile_time(self, f_value):
        """Inverse profile: t(f) = tau/2 + tau/(2 beta) arctan((2f - 1)/delta)."""
        self._check_profile()
        tau, d = self.params.tau, self.params.delta
        f_arr = np.asarray(f_value, dtype=float)
        out = 0.5 * tau + tau / (2.0 * self.beta) * np.arctan((2.0 * f_arr - 1.0) / d)
        return out if out.ndim else float(out)

    # -- coupling ----------------------------------------------------------

    def coupling(self, t):
        """h(t); exactly 0 for t >= tau.  Accepts scalars or arrays."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0):
            raise ValueError("t must be non-negative")
        tau = self.params.tau
        if self.kind is ScheduleKind.LINEAR:
            frac = np.clip(1.0 - t_arr / tau, 0.0, None)
        else:
            frac = np.where(t_arr >= tau, 0.0, self.one_minus_f(t_arr))
        out = self.params.h0 * np.asarray(frac)
        return out if out.ndim else complex(out)

    def coupling_integral(self, t):
        """Integral of h from 0 to t (closed form, t clamped to tau)."""
        tau = self.params.tau
        t_arr = np.clip(np.asarray(t, dtype=float), 0.0, tau)
        if self.kind is ScheduleKind.LINEAR:
            frac = t_arr - 0.5 * t_arr * t_arr / tau
        else:
            d, beta = self.params.delta, self.beta
            x = 2.0 * t_arr / tau - 1.0
            log_cos_beta = math.log(d) - 0.5 * math.log1p(d * d)
            frac = 0.5 * t_arr - 0.25 * d * tau / beta * (log_cos_beta - np.log(np.cos(beta * x)))
        out = self.params.h0 * np.asarray(frac)
        return out if out.ndim else complex(out)

    def epsilon_integral(self, t):
        """Integral of eps(t) = h(t) + 1 from 0 to t, for t <= tau."""
        return np.asarray(t, dtype=float) + self.coupling_integral(t)


def linear_schedule(params):
    return Schedule(ScheduleKind.LINEAR, params)


def nonlinear_schedule(params):
    return Schedule(ScheduleKind.NONLINEAR, params)


def make_schedule(kind, params):
    """``kind`` is a ScheduleKind or its string value."""
    return Schedule(ScheduleKind(kind) if not isinstance(kind, ScheduleKind) else kind, params)
