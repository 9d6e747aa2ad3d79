"""
Non-Hermitian quantum annealing applied to Grover's search.

The N-level problem H(t) = -|m><m| - h(t)|psi0><psi0| stays in the plane
spanned by |psi0> and its orthogonal partner |psi1>, so every run reduces to
a 2x2 non-Hermitian system whatever N is.
"""

from .analytic import (
    asymptotic_transition_probability,
    landau_zener_probability,
    nqa_time_estimate,
    weber_params,
    weber_solution,
    weber_transition_probability,
)
from .errors import (
    AsymptoticRegimeWarning,
    ConvergenceError,
    DeskScaleError,
    FullyDecayedError,
    IntegrationError,
    NHQAError,
)
from .model import AnnealParams, effective_hamiltonian, make_params, min_gap_scan, spectrum
from .propagate import IntegratorConfig, Picture, integrate, integrate_full
from .runs import RunConfig, compare_analytic, run, scaling, sweep
from .schedule import Schedule, ScheduleKind, make_schedule
from .special import complex_gamma, parabolic_cylinder_d

__version__ = "0.1.0"

__all__ = [
    "AnnealParams",
    "AsymptoticRegimeWarning",
    "ConvergenceError",
    "DeskScaleError",
    "FullyDecayedError",
    "IntegrationError",
    "IntegratorConfig",
    "NHQAError",
    "Picture",
    "RunConfig",
    "Schedule",
    "ScheduleKind",
    "asymptotic_transition_probability",
    "compare_analytic",
    "complex_gamma",
    "effective_hamiltonian",
    "integrate",
    "integrate_full",
    "landau_zener_probability",
    "make_params",
    "make_schedule",
    "min_gap_scan",
    "nqa_time_estimate",
    "parabolic_cylinder_d",
    "run",
    "scaling",
    "spectrum",
    "sweep",
    "weber_params",
    "weber_solution",
    "weber_transition_probability",
]
