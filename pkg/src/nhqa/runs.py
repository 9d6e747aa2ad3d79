"""
Single runs, figure presets, sweeps, scaling studies and the analytic
comparison.  The CLI is a thin layer over these functions.
"""

import logging
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import (
    asymptotic_transition_probability,
    landau_zener_probability,
    weber_params,
    weber_transition_probability,
)
from .errors import AsymptoticRegimeWarning, NHQAError
from .model import make_params, min_gap_scan
from .propagate import IntegratorConfig, Picture, decay_rate, integrate
from .schedule import ScheduleKind, make_schedule

log = logging.getLogger(__name__)

__all__ = [
    "RunConfig",
    "FIGURES",
    "SWEEP_AXES",
    "SweepResult",
    "ScalingResult",
    "run",
    "summarize",
    "figure_config",
    "sweep",
    "minimal_tau",
    "scaling",
    "compare_analytic",
    "linear_fit",
]

# figure presets
FIGURES = {
    "fig1_left": dict(schedule_kind="linear", g=2.0, delta=0.0, tau=1.5e4, log2n=40),
    "fig1_right": dict(schedule_kind="linear", g=2.0, delta=0.0025, tau=1.5e4, log2n=40),
    "fig2": dict(schedule_kind="nonlinear", g=2.0, delta=1e-4, tau=5e4, log2n=40),
    "fig3": dict(schedule_kind="nonlinear", g=2.0, delta=7.5e-5, tau=5.5e4, log2n=40),
}

SWEEP_AXES = ("g", "delta", "tau", "log2n")


@dataclass(frozen=True)
class RunConfig:
    params: object
    schedule_kind: ScheduleKind = ScheduleKind.LINEAR
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    outputs: dict = field(default_factory=dict)
    emit_spectra: bool = True

    def __post_init__(self):
        if not isinstance(self.schedule_kind, ScheduleKind):
            object.__setattr__(self, "schedule_kind", ScheduleKind(self.schedule_kind))
        # fails early for nonlinear with delta = 0
        make_schedule(self.schedule_kind, self.params)

    @classmethod
    def from_values(cls, *, g, delta, tau, log2n, schedule_kind="linear", integrator=None, **kw):
        return cls(
            params=make_params(g, delta, tau, log2n),
            schedule_kind=schedule_kind,
            integrator=integrator or IntegratorConfig(),
            **kw,
        )

    @property
    def schedule(self):
        return make_schedule(self.schedule_kind, self.params)

    def with_value(self, axis, value):
        if axis not in SWEEP_AXES:
            raise ValueError(f"unknown axis {axis!r}; choose from {', '.join(SWEEP_AXES)}")
        key = "log2_n" if axis == "log2n" else axis
        if key == "log2_n":
            value = int(value)
        params = make_params(**{**_param_kwargs(self.params), key: value})
        return RunConfig(params, self.schedule_kind, self.integrator, dict(self.outputs), self.emit_spectra)

    def as_dict(self):
        return {
            "params": self.params.as_dict(),
            "schedule_kind": self.schedule_kind.value,
            "integrator": self.integrator.as_dict(),
            "outputs": dict(self.outputs),
            "emit_spectra": self.emit_spectra,
        }


def _param_kwargs(params):
    return dict(g=params.g, delta=params.delta, tau=params.tau, log2_n=params.log2_n)


def figure_config(figure_id, integrator=None, **kw):
    if figure_id not in FIGURES:
        raise ValueError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURES)}")
    return RunConfig.from_values(**FIGURES[figure_id], integrator=integrator, **kw)


def summarize(config, trajectory):
    """Scalar outcome of a run, echoing the fully resolved configuration."""
    params, schedule = config.params, config.schedule
    t_star, gap_min = min_gap_scan(params, schedule, samples=2000)
    out = {
        "config": config.as_dict(),
        "n_items": 2**params.log2_n,
        "p_tau_final": trajectory.final_transition,
        "p_surv_final": trajectory.final_survival,
        "p_marked_final": trajectory.final_marked,
        "min_gap": gap_min,
        "t_min_gap": t_star,
        "survival_decay_rate": decay_rate(trajectory),
        "nfev": trajectory.stats.get("nfev"),
        "nu": None,
        "landau_zener": None,
    }
    if config.schedule_kind is ScheduleKind.LINEAR:
        nu = params.sin_alpha**2 / (4.0 * params.gamma)
        out["nu"] = {"re": nu.real, "im": nu.imag}
        if params.delta == 0:
            out["landau_zener"] = landau_zener_probability(params)
    return out


def run(config):
    """Integrate one configuration; returns (trajectory, summary)."""
    trajectory = integrate(config.params, config.schedule, config.integrator)
    return trajectory, summarize(config, trajectory)


# -- sweeps ------------------------------------------------------------------

SWEEP_COLUMNS = ["value", "p_tau", "p_surv", "p_marked", "min_gap", "status"]


@dataclass(frozen=True)
class SweepResult:
    axis: str
    rows: list
    wall_times: list = field(default_factory=list, compare=False)

    @property
    def columns(self):
        return SWEEP_COLUMNS

    def table(self):
        return [[r[c] for c in SWEEP_COLUMNS] for r in self.rows]


def _sweep_point(args):
    config, axis, value = args
    row = {"value": value, "p_tau": None, "p_surv": None, "p_marked": None, "min_gap": None}
    try:
        point = config.with_value(axis, value)
        traj = integrate(point.params, point.schedule, point.integrator)
        row["p_tau"] = traj.final_transition
        row["p_surv"] = traj.final_survival
        row["p_marked"] = traj.final_marked
        row["min_gap"] = min_gap_scan(point.params, point.schedule, samples=2000)[1]
        row["status"] = "ok"
        seconds = traj.stats.get("seconds")
    except (NHQAError, ValueError, ArithmeticError) as exc:
        row["status"] = f"error: {type(exc).__name__}: {exc}".replace("\n", " ")
        seconds = None
    return row, seconds


def sweep(base, axis, grid, parallelism=1):
    """
    Re-run ``base`` for each value of one parameter.

    Rows come back in grid order whatever ``parallelism`` is; a failing
    point is recorded in its row and the sweep carries on.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown axis {axis!r}; choose from {', '.join(SWEEP_AXES)}")
    grid = list(grid)
    if not grid:
        raise ValueError("empty grid")
    base_no_samples = RunConfig(
        base.params, base.schedule_kind, base.integrator.replace(output_samples=2), {}, False
    )
    jobs = [(base_no_samples, axis, v) for v in grid]
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(j) for j in jobs]
    return SweepResult(axis, [r for r, _ in results], [s for _, s in results])


# -- scaling -----------------------------------------------------------------


def _final_p(params, config):
    schedule = make_schedule(ScheduleKind.LINEAR, params)
    return integrate(params, schedule, config).final_transition


def minimal_tau(params, target_p, config=None, tau_start=10.0, growth=1.05, tau_max=1e7, rel_tol=1e-4):
    """
    Smallest tau with P_tau(tau) >= target_p for the linear schedule.

    P_tau(tau) oscillates, so a plain bisection could skip an early
    crossing: tau is first stepped up geometrically by ``growth`` until the
    target is met, then the last bracket is bisected in log tau.

    Returns (tau_star, p_at_tau_star).  Raises ValueError when no bracket
    is found below ``tau_max``.
    """
    config = config or IntegratorConfig(rel_tol=1e-8, abs_tol=1e-10, output_samples=2)
    lo = None
    tau = tau_start
    while True:
        p_val = _final_p(params.replace(tau=tau), config)
        if p_val >= target_p:
            hi, p_hi = tau, p_val
            break
        lo = tau
        tau *= growth
        if tau > tau_max:
            raise ValueError(f"no tau <= {tau_max:g} reaches P = {target_p}")
    if lo is None:
        return hi, p_hi
    while hi / lo > 1.0 + rel_tol:
        mid = math.sqrt(lo * hi)
        p_mid = _final_p(params.replace(tau=mid), config)
        if p_mid >= target_p:
            hi, p_hi = mid, p_mid
        else:
            lo = mid
    return hi, p_hi


def linear_fit(x, y):
    """Least-squares line; returns dict(slope, intercept, r2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return {"slope": float(slope), "intercept": float(intercept), "r2": r2}


SCALING_COLUMNS = ["log2n", "n_items", "tau_star", "p_at_tau_star", "tau_lz", "ratio_to_lz", "status"]


@dataclass(frozen=True)
class ScalingResult:
    delta: float
    g: float
    target_p: float
    regressor: str
    rows: list
    fit: dict

    @property
    def columns(self):
        return SCALING_COLUMNS

    def table(self):
        return [[r[c] for c in SCALING_COLUMNS] for r in self.rows]


def _scaling_point(args):
    g, delta, log2n, target_p, kw = args
    params = make_params(g, delta, 1.0, log2n)
    row = {"log2n": log2n, "n_items": 2**params.log2_n, "tau_lz": None, "ratio_to_lz": None}
    try:
        tau_star, p_star = minimal_tau(params, target_p, **kw)
        row.update(tau_star=tau_star, p_at_tau_star=p_star, status="ok")
        if delta == 0:
            tau_lz = g * params.n_items * math.log(1.0 / (1.0 - target_p)) / (2.0 * math.pi)
            row.update(tau_lz=tau_lz, ratio_to_lz=tau_star / tau_lz)
    except (NHQAError, ValueError, ArithmeticError) as exc:
        row.update(tau_star=None, p_at_tau_star=None, status=f"error: {exc}")
    return row


def scaling(log2n_grid, target_p, delta, g, parallelism=1, **search_kw):
    """
    tau*(N) over a grid of database sizes, fitted against ln N (delta > 0)
    or N (delta = 0).
    """
    grid = [int(v) for v in log2n_grid]
    if len(grid) < 4:
        raise ValueError("scaling needs at least 4 grid points")
    if not 0.0 < target_p < 1.0:
        raise ValueError("target_p must lie in (0, 1)")
    jobs = [(g, delta, n, target_p, search_kw) for n in grid]
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            rows = list(pool.map(_scaling_point, jobs))
    else:
        rows = [_scaling_point(j) for j in jobs]
    good = [r for r in rows if r["status"] == "ok"]
    regressor = "ln_n" if delta > 0 else "n"
    fit = None
    if len(good) >= 2:
        x = [r["log2n"] * math.log(2.0) if delta > 0 else r["n_items"] for r in good]
        fit = linear_fit(x, [r["tau_star"] for r in good])
    return ScalingResult(delta, g, target_p, regressor, rows, fit)


# -- analytic comparison -------------------------------------------------------


def _rel(a, b):
    if a is None or b is None:
        return None
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def compare_analytic(config):
    """
    P_tau(tau) from the integrator, the exact Weber solution, its
    asymptotic form and (delta = 0) the Landau-Zener formula.
    """
    if config.schedule_kind is not ScheduleKind.LINEAR:
        raise ValueError("unsupported: the Weber solution covers the linear schedule only")
    params = config.params
    traj = integrate(params, config.schedule, config.integrator.replace(output_samples=2))
    wp = weber_params(params)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", AsymptoticRegimeWarning)
        p_asym = asymptotic_transition_probability(wp)
    values = {
        "integrator": traj.final_transition,
        "weber": weber_transition_probability(wp),
        "asymptotic": p_asym,
        "landau_zener": landau_zener_probability(params) if params.delta == 0 else None,
    }
    names = list(values)
    deviations = {
        f"{a}_vs_{b}": _rel(values[a], values[b])
        for i, a in enumerate(names)
        for b in names[i + 1 :]
    }
    return {
        "config": config.as_dict(),
        "nu": {"re": wp.nu.real, "im": wp.nu.imag},
        "abs_z0": abs(wp.z0),
        "p_tau": values,
        "relative_deviation": deviations,
        "warnings": [str(w.message) for w in caught],
    }


def default_rel_tol():
    """Default integrator rel_tol, overridable through NHQA_DEFAULT_TOL."""
    raw = os.environ.get("NHQA_DEFAULT_TOL")
    if raw is None:
        return IntegratorConfig.rel_tol
    value = float(raw)
    if not value > 0:
        raise ValueError(f"NHQA_DEFAULT_TOL must be positive, got {raw!r}")
    return value


__all__ += ["default_rel_tol", "Picture"]
