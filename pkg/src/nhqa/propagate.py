"""
Time integration of the non-Hermitian Schrodinger equation.

The state is never renormalized: the decay of <psi|psi> is the survival
probability, and the transition probability is a ratio of populations.
"""

import enum
import math
import time
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate as _ivp

from .errors import DeskScaleError, FullyDecayedError, IntegrationError
from .model import build_full_hamiltonian, marked_overlaps, spectrum
from .schedule import ScheduleKind

__all__ = [
    "Picture",
    "IntegratorConfig",
    "Trajectory",
    "FullTrajectory",
    "integrate",
    "integrate_full",
    "transition_probability",
    "survival_probability",
    "measurement_probability",
    "decay_rate",
    "FULL_INTEGRATION_CAP",
    "DECAY_FLOOR",
]

FULL_INTEGRATION_CAP = 2**10
# below this rel_tol * |y| nears the subnormal range and step control breaks down
DECAY_FLOOR = 1e-280


class Picture(enum.Enum):
    BARE = "bare"
    PHASE_FACTORED = "phase-factored"


@dataclass(frozen=True)
class IntegratorConfig:
    """
    Integrator settings.  ``max_step=None`` means tau/1000.

    The phase-factored picture integrates U_a = c_a exp(-(i/2) Re int eps dt),
    removing the fast common phase; amplitudes are converted back before
    any observable is formed.  Only the phase is factored out: the common
    loss exp(-(1/2) Im int eps dt) stays in U, otherwise U would grow like
    exp(delta tau / 4) and overflow in strongly dissipative runs.

    ``abs_tol`` applies at unit norm and is scaled by the current norm as
    the state decays, so step control stays relative to the surviving
    population however small it gets.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = None
    output_samples: int = 2000
    picture: Picture = Picture.PHASE_FACTORED
    method: str = "DOP853"

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.output_samples < 2:
            raise ValueError("output_samples must be >= 2")
        if self.max_step is not None and not self.max_step > 0:
            raise ValueError("max_step must be positive")
        if not isinstance(self.picture, Picture):
            object.__setattr__(self, "picture", Picture(self.picture))

    def replace(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_step": self.max_step,
            "output_samples": self.output_samples,
            "picture": self.picture.value,
            "method": self.method,
        }


@dataclass(frozen=True)
class Trajectory:
    """
    Sampled solution of the two-level problem.

    ``amplitudes[:, 0]`` is c0 (on |psi0>), ``amplitudes[:, 1]`` is c1.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    transition_prob: np.ndarray
    survival_prob: np.ndarray
    marked_prob: np.ndarray
    spectra: object
    params: object
    schedule: object
    config: IntegratorConfig
    stats: dict = field(default_factory=dict)

    @property
    def scaled_time(self):
        return self.times / self.params.tau

    @property
    def final_transition(self):
        return float(self.transition_prob[-1])

    @property
    def final_survival(self):
        return float(self.survival_prob[-1])

    @property
    def final_marked(self):
        return float(self.marked_prob[-1])


@dataclass(frozen=True)
class FullTrajectory:
    """N-level run: the projected two-level trajectory plus the raw states."""

    reduced: Trajectory
    states: np.ndarray
    leakage: np.ndarray
    marked_index: int


def transition_probability(c0, c1):
    """|c1|^2 / (|c0|^2 + |c1|^2); scalars or arrays."""
    a = np.abs(np.asarray(c0, dtype=complex))
    b = np.abs(np.asarray(c1, dtype=complex))
    m = np.maximum(a, b)
    if np.any(m == 0):
        raise FullyDecayedError("both amplitudes are zero; transition probability undefined")
    a, b = a / m, b / m
    out = b * b / (a * a + b * b)
    return out if out.ndim else float(out)


def survival_probability(c0, c1):
    """|c0|^2 + |c1|^2, the trace of the unnormalized density matrix."""
    out = np.abs(np.asarray(c0, dtype=complex)) ** 2 + np.abs(np.asarray(c1, dtype=complex)) ** 2
    return out if out.ndim else float(out)


def measurement_probability(state, n):
    """|<n|psi>|^2 / <psi|psi> for basis index ``n`` (0-based)."""
    state = np.asarray(state, dtype=complex)
    scale = np.max(np.abs(state))
    if scale == 0:
        raise ValueError("zero-norm state")
    v = state / scale
    return float(abs(v[n]) ** 2 / np.vdot(v, v).real)


def _marked_probability(params, c0, c1):
    m1, m0 = marked_overlaps(params)
    overlap = m1 * c1 + m0 * c0
    norm = np.abs(c0) ** 2 + np.abs(c1) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.abs(overlap) ** 2 / norm


def _scalar_coupling(schedule):
    # plain-float closure; np.asarray per RHS call would dominate the runtime
    p = schedule.params
    h0, tau = p.h0, p.tau
    if schedule.kind is ScheduleKind.LINEAR:

        def h(t):
            return h0 * (1.0 - t / tau) if t < tau else 0j

        return h
    d, beta = p.delta, schedule.beta
    d2 = 1.0 + d * d

    def h(t):
        if t >= tau:
            return 0j
        x = 2.0 * t / tau - 1.0
        if x > 0.999:
            tt = math.tan(beta * (1.0 - x))
            return h0 * (tt * d2 / (2.0 * (d + tt)))
        if x < -0.999:
            tt = math.tan(beta * (1.0 + x))
            return h0 * (1.0 - tt * d2 / (2.0 * (d + tt)))
        return h0 * (0.5 - 0.5 * d * math.tan(beta * x))

    return h


def _two_level_rhs(params, schedule, picture):
    h_of = _scalar_coupling(schedule)
    s_half = 0.5 * params.sin_alpha
    cos_a = params.cos_alpha
    inv_n = 1.0 / params.n_items
    upper = -(1.0 - inv_n)  # <psi1|H|psi1>, independent of h

    if picture is Picture.BARE:

        def rhs(t, y):
            h = h_of(t)
            c1, c0 = y
            return np.array(
                [-1j * (upper * c1 + s_half * c0), -1j * (s_half * c1 - (h + inv_n) * c0)]
            )

    else:

        def rhs(t, y):
            h = h_of(t)
            x = 0.5 * (h - cos_a)
            loss = 0.5 * h.imag
            u1, u0 = y
            return np.array(
                [-1j * (x * u1 + s_half * u0) - loss * u1, -1j * (s_half * u1 - x * u0) - loss * u0]
            )

    return rhs


_SOLVERS = {name: getattr(_ivp, name) for name in ("RK23", "RK45", "DOP853", "BDF")}


def _solve(rhs, y0, tau, config, t_eval):
    """
    Step the solver by hand so that a failure, or a state decayed below
    ``DECAY_FLOOR``, is reported at the solver's own t rather than at the
    last output sample.  Between steps the absolute tolerance follows the
    state norm.  Returns (states at t_eval, stats).
    """
    try:
        solver_cls = _SOLVERS[config.method]
    except KeyError:
        raise ValueError(f"unknown method {config.method!r}; choose from {', '.join(_SOLVERS)}")
    max_step = config.max_step if config.max_step is not None else tau / 1000.0
    started = time.perf_counter()
    with np.errstate(invalid="ignore", over="ignore"):
        solver = solver_cls(
            rhs, 0.0, y0, tau, rtol=config.rel_tol, atol=config.abs_tol, max_step=max_step
        )
    out = np.empty((y0.size, t_eval.size), dtype=complex)
    out[:, 0] = y0
    j = 1
    while solver.status == "running":
        # a nan error norm makes the step fail; scipy's own warning adds nothing
        with np.errstate(invalid="ignore", over="ignore"):
            message = solver.step()
        if solver.status == "failed":
            raise IntegrationError(f"integration failed: {message}", t=float(solver.t))
        if np.max(np.abs(solver.y)) < DECAY_FLOOR:
            raise FullyDecayedError("state fully decayed below the representable floor", t=float(solver.t))
        solver.atol = config.abs_tol * min(1.0, float(np.max(np.abs(solver.y))))
        k = j
        while k < t_eval.size and t_eval[k] <= solver.t:
            k += 1
        if k > j:
            out[:, j:k] = solver.dense_output()(t_eval[j:k])
            j = k
    stats = {"nfev": int(solver.nfev), "seconds": time.perf_counter() - started}
    return out, stats


def _phase_factor(schedule, times):
    return np.exp(0.5j * schedule.epsilon_integral(times).real)


def _check_decay(times, c0, c1):
    dead = (np.abs(c0) < DECAY_FLOOR) & (np.abs(c1) < DECAY_FLOOR)
    if np.any(dead):
        t_dead = float(times[int(np.argmax(dead))])
        raise FullyDecayedError("state fully decayed below the representable floor", t=t_dead)


def _assemble(params, schedule, config, times, c0, c1, stats):
    _check_decay(times, c0, c1)
    return Trajectory(
        times=times,
        amplitudes=np.column_stack([c0, c1]),
        transition_prob=transition_probability(c0, c1),
        survival_prob=survival_probability(c0, c1),
        marked_prob=_marked_probability(params, c0, c1),
        spectra=spectrum(params, schedule.coupling(times)),
        params=params,
        schedule=schedule,
        config=config,
        stats=stats,
    )


def integrate(params, schedule, config=None):
    """
    Integrate i dc/dt = H_ef(t) c on [0, tau] from (c0, c1) = (1, 0).

    Raises
    ------
    IntegrationError
        Step-size underflow or unattainable tolerance, with the failing t.
    FullyDecayedError
        Both amplitudes underflowed (no meaningful ratio remains).
    """
    config = config or IntegratorConfig()
    if schedule.params is not params and schedule.params != params:
        raise ValueError("schedule was built for different parameters")
    tau = params.tau
    times = np.linspace(0.0, tau, config.output_samples)
    rhs = _two_level_rhs(params, schedule, config.picture)
    ys, stats = _solve(rhs, np.array([0j, 1.0 + 0j]), tau, config, times)
    c1, c0 = ys[0], ys[1]
    if config.picture is Picture.PHASE_FACTORED:
        factor = _phase_factor(schedule, times)
        c0, c1 = c0 * factor, c1 * factor
    return _assemble(params, schedule, config, times, c0, c1, stats)


def integrate_full(n_items, marked_index, schedule, config=None):
    """
    Integrate the dense N-level equation from the uniform superposition.

    The state is projected on |psi0> and |psi1> for comparison with the
    two-level run; ``leakage`` is the norm of what lies outside that plane.
    """
    config = config or IntegratorConfig()
    params = schedule.params
    n_items = int(n_items)
    if n_items > FULL_INTEGRATION_CAP:
        raise DeskScaleError(f"n_items = {n_items} exceeds {FULL_INTEGRATION_CAP}")
    if n_items != params.n_items:
        raise ValueError(f"n_items = {n_items} but the schedule has N = {params.n_items:g}")
    h0_mat = build_full_hamiltonian(n_items, marked_index, 0.0)
    h1_mat = build_full_hamiltonian(n_items, marked_index, 1.0) - h0_mat
    h_of = _scalar_coupling(schedule)
    shift = config.picture is Picture.PHASE_FACTORED

    def rhs(t, y):
        h = h_of(t)
        out = h0_mat @ y + h * (h1_mat @ y)
        if shift:
            out += 0.5 * (h.real + 1.0) * y
        return -1j * out

    psi0 = np.full(n_items, 1.0 / math.sqrt(n_items), dtype=complex)
    tau = params.tau
    times = np.linspace(0.0, tau, config.output_samples)
    ys, stats = _solve(rhs, psi0.copy(), tau, config, times)
    states = ys.T
    if shift:
        states = states * _phase_factor(schedule, times)[:, None]
    e_m = np.zeros(n_items, dtype=complex)
    e_m[marked_index - 1] = 1.0
    psi1 = (params.sin_half * psi0 - e_m) / params.cos_half
    c0 = states @ psi0.conj()
    c1 = states @ psi1.conj()
    rest = states - np.outer(c0, psi0) - np.outer(c1, psi1)
    leakage = np.linalg.norm(rest, axis=1)
    reduced = _assemble(params, schedule, config, times, c0, c1, stats)
    return FullTrajectory(reduced=reduced, states=states, leakage=leakage, marked_index=marked_index)


def decay_rate(trajectory):
    """
    Least-squares rate k of P_s(t) ~ exp(-k t) over the whole run.

    Reported next to delta rather than assumed equal to it.
    """
    ps = trajectory.survival_prob
    ok = ps > 0
    if ok.sum() < 2:
        return float("nan")
    slope = np.polyfit(trajectory.times[ok], np.log(ps[ok]), 1)[0]
    return float(-slope)
