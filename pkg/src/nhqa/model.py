"""
Annealing configuration, Hamiltonians and their spectra.

The search Hamiltonian is H(t) = H0 + h(t) H1 with H0 = -|m><m| and
H1 = -|psi0><psi0|.  Starting from |psi0> the dynamics never leave
span{|psi0>, |psi1>}, so everything here is expressed either through the
2x2 effective Hamiltonian or, at desk scale, the dense N x N matrix.

Two-level vectors are stored in the order (psi1, psi0), matching the
basis |psi1> = (1, 0), |psi0> = (0, 1).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DeskScaleError

__all__ = [
    "AnnealParams",
    "EffectiveHamiltonian",
    "Spectrum",
    "make_params",
    "effective_hamiltonian",
    "spectrum",
    "omega",
    "min_gap_scan",
    "build_full_hamiltonian",
    "marked_overlaps",
    "FULL_MATRIX_CAP",
]

FULL_MATRIX_CAP = 2**12
# N itself is held as a float
MAX_LOG2_N = 1000

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class AnnealParams:
    """
    Physical run configuration.

    ``n_items`` may be astronomically large (2**40); only ``cos_alpha`` and
    ``sin_alpha`` enter the dynamics, and both are computed without forming
    1 - 2/N by subtraction where it matters.
    """

    g: float
    delta: float
    tau: float
    log2_n: float
    n_items: float = field(init=False)
    alpha: float = field(init=False)
    cos_alpha: float = field(init=False)
    sin_alpha: float = field(init=False)

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g!r}")
        if not self.delta >= 0:
            raise ValueError(f"delta must be non-negative (negative is gain), got {self.delta!r}")
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise ValueError(f"tau must be positive and finite, got {self.tau!r}")
        if not 1 <= self.log2_n <= MAX_LOG2_N:
            raise ValueError(f"log2_n must lie in [1, {MAX_LOG2_N}], got {self.log2_n!r}")
        inv_n = 2.0 ** (-self.log2_n)
        object.__setattr__(self, "n_items", 2.0**self.log2_n)
        # sin(alpha/2) = N^{-1/2}
        object.__setattr__(self, "alpha", 2.0 * math.asin(math.sqrt(inv_n)))
        object.__setattr__(self, "cos_alpha", 1.0 - 2.0 * inv_n)
        object.__setattr__(self, "sin_alpha", 2.0 * math.sqrt(inv_n * (1.0 - inv_n)))

    @property
    def h0(self):
        return complex(self.g, self.delta)

    @property
    def gamma(self):
        return self.h0 / self.tau

    @property
    def sin_half(self):
        return 2.0 ** (-0.5 * self.log2_n)

    @property
    def cos_half(self):
        return math.sqrt(1.0 - 2.0 ** (-self.log2_n))

    def replace(self, **changes):
        kw = dict(g=self.g, delta=self.delta, tau=self.tau, log2_n=self.log2_n)
        kw.update(changes)
        return AnnealParams(**kw)

    def as_dict(self):
        return {"g": self.g, "delta": self.delta, "tau": self.tau, "log2n": self.log2_n}


def make_params(g, delta, tau, log2_n):
    """Validate and package a run configuration; N = 2**log2_n."""
    if isinstance(log2_n, float) and log2_n.is_integer():
        log2_n = int(log2_n)
    if not isinstance(log2_n, (int, np.integer)):
        raise ValueError(f"log2_n must be an integer, got {log2_n!r}")
    return AnnealParams(float(g), float(delta), float(tau), int(log2_n))


@dataclass(frozen=True)
class EffectiveHamiltonian:
    epsilon: complex
    omega_vec: tuple
    matrix: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    """Two lowest eigenvalues; fields are scalars or equal-shape arrays."""

    e0: object
    e1: object
    omega: object

    @property
    def gap_magnitude(self):
        return np.abs(self.omega)


def effective_hamiltonian(params, h):
    """-(eps/2) I + (1/2) Omega . sigma with Omega = (sin a, 0, h - cos a)."""
    h = complex(h)
    eps = h + 1.0
    ox, oz = params.sin_alpha, h - params.cos_alpha
    half_eps = 0.5 * eps
    matrix = np.array(
        [[-half_eps + 0.5 * oz, 0.5 * ox], [0.5 * ox, -half_eps - 0.5 * oz]], dtype=complex
    )
    return EffectiveHamiltonian(eps, (complex(ox), 0j, oz), matrix)


def pauli_assembly(params, h):
    """Same matrix built literally from the Pauli matrices (test oracle)."""
    h = complex(h)
    ox, oy, oz = params.sin_alpha, 0.0, h - params.cos_alpha
    return -(h + 1.0) / 2 * np.eye(2) + 0.5 * (ox * _SIGMA_X + oy * _SIGMA_Y + oz * _SIGMA_Z)


def omega(params, h):
    """
    sqrt(h^2 - 2 h cos a + 1) on the branch Re >= 0 (ties: Im >= 0).

    Evaluated as sqrt((h - cos a)^2 + sin^2 a) so the tiny sin^2 a of a
    large database is not lost against h^2 + 1.
    """
    h = np.asarray(h, dtype=complex)
    x = h - params.cos_alpha
    root = np.sqrt(x * x + params.sin_alpha**2)
    flip = (root.real < 0) | ((root.real == 0) & (root.imag < 0))
    root = np.where(flip, -root, root)
    return root if root.ndim else complex(root)


def spectrum(params, h):
    """E0 = -eps/2 - Omega/2, E1 = -eps/2 + Omega/2; h may be an array."""
    h_arr = np.asarray(h, dtype=complex)
    om = omega(params, h_arr)
    half_eps = 0.5 * (h_arr + 1.0)
    e0 = -half_eps - 0.5 * om
    e1 = -half_eps + 0.5 * om
    if h_arr.ndim == 0:
        return Spectrum(complex(e0), complex(e1), complex(om))
    return Spectrum(e0, e1, om)


def _golden_min(fn, a, b, tol):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    if fc < fd:
        return c, fc
    return d, fd


def min_gap_scan(params, schedule, samples=2000):
    """
    Locate the minimum of |Omega(h(t))| over [0, tau].

    Coarse scan on ``samples`` equispaced times, then golden-section search
    between the neighbours of the best sample.

    Returns
    -------
    (t_star, gap_min)
    """
    if samples < 100:
        raise ValueError("samples must be >= 100")
    tau = params.tau
    ts = np.linspace(0.0, tau, samples)
    gaps = np.abs(omega(params, schedule.coupling(ts)))
    i = int(np.argmin(gaps))
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, samples - 1)]

    def gap_at(t):
        return abs(omega(params, schedule.coupling(t)))

    t_star, gap_min = _golden_min(gap_at, lo, hi, tol=4 * np.finfo(float).eps * tau)
    if gaps[i] < gap_min:
        return float(ts[i]), float(gaps[i])
    return float(t_star), float(gap_min)


def build_full_hamiltonian(n_items, marked_index, h):
    """
    Dense H0 + h H1 for a database of ``n_items`` (desk scale only).

    ``marked_index`` is 1-based.
    """
    n_items = int(n_items)
    if n_items < 2:
        raise ValueError("n_items must be >= 2")
    if n_items > FULL_MATRIX_CAP:
        raise DeskScaleError(f"n_items = {n_items} exceeds the dense cap {FULL_MATRIX_CAP}")
    if not 1 <= marked_index <= n_items:
        raise ValueError(f"marked_index must be in [1, {n_items}], got {marked_index}")
    mat = np.full((n_items, n_items), -complex(h) / n_items, dtype=complex)
    mat[marked_index - 1, marked_index - 1] -= 1.0
    return mat


def marked_overlaps(params):
    """Components of |m> in the (psi1, psi0) basis: (-cos(a/2), sin(a/2))."""
    return -params.cos_half, params.sin_half
