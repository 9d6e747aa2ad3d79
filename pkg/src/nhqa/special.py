"""
Complex Gamma and parabolic cylinder functions D_p(z).

Only what the Weber-equation solution path needs: complex order, complex
argument, moderate |z|.  Three evaluation regimes are used for D_p(z):

==================  =====================================================
``|z| <= 4``        Kummer-series representation about z = 0.
``4 < |z| <= 40``   Taylor-series continuation of Weber's equation along
                    the ray through z, anchored on whichever end is stable.
``|z| > 40``        Large-|z| asymptotic expansion (with the connection
                    term outside |arg z| <= pi/2).
==================  =====================================================
"""

import cmath
import math

import mpmath

from .errors import ConvergenceError

__all__ = [
    "complex_gamma",
    "rgamma",
    "parabolic_cylinder_d",
    "pcfd_series",
    "pcfd_asymptotic",
    "pcfd_continued",
    "SERIES_RADIUS",
    "ASYMPTOTIC_RADIUS",
]

SERIES_RADIUS = 4.0
ASYMPTOTIC_RADIUS = 40.0
MAX_ARGUMENT = 1.0e4

_EPS = 2.0 ** -53

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _is_pole(zc):
    return zc.imag == 0.0 and zc.real <= 0.0 and zc.real == math.floor(zc.real)


def complex_gamma(zc):
    """
    Gamma function of a complex argument.

    Lanczos approximation for Re z >= 1/2, reflection formula
    Gamma(z) Gamma(1-z) = pi / sin(pi z) otherwise.

    Raises
    ------
    ValueError
        At the poles z = 0, -1, -2, ...
    """
    zc = complex(zc)
    if _is_pole(zc):
        raise ValueError(f"Gamma has a pole at {zc.real:g}")
    if zc.real < 0.5:
        return math.pi / (cmath.sin(math.pi * zc) * complex_gamma(1.0 - zc))
    zm = zc - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    # t**(zm+1/2) e^{-t} through the log keeps large |Im z| from overflowing early
    return _SQRT_2PI * cmath.exp((zm + 0.5) * cmath.log(t) - t) * acc


def rgamma(zc):
    """1/Gamma(z), zero at the poles."""
    zc = complex(zc)
    if _is_pole(zc):
        return 0j
    return 1.0 / complex_gamma(zc)


def _kummer_m(a, b, x, max_terms=4000):
    # 1F1(a; b; x) by direct summation; also returns the largest term
    term = 1.0 + 0j
    total = 1.0 + 0j
    peak = 1.0
    for k in range(max_terms):
        term *= (a + k) / (b + k) * x / (k + 1)
        total += term
        mag = abs(term)
        if not math.isfinite(mag):
            break
        peak = max(peak, mag)
        if mag <= _EPS * 0.25 * abs(total) and k > abs(a * x) ** 0.5:
            return total, peak
    raise ConvergenceError("series", f"1F1({a}, {b}, {x}) did not converge")


def _pcfd_series_double(p, z):
    x = 0.5 * z * z
    m1, peak1 = _kummer_m(-0.5 * p, 0.5, x)
    m2, peak2 = _kummer_m(0.5 - 0.5 * p, 1.5, x)
    pref = cmath.exp(0.5 * p * math.log(2.0) - 0.25 * z * z)
    c_even = math.sqrt(math.pi) * rgamma(0.5 - 0.5 * p)
    c_odd = _SQRT_2PI * z * rgamma(-0.5 * p)
    inner = c_even * m1 - c_odd * m2
    lost = _loss(c_even, peak1, c_odd, peak2, inner)
    return pref * inner, lost


def _loss(c_even, peak1, c_odd, peak2, inner):
    # largest summand over the result bounds the cancellation; a coefficient
    # that is exactly zero (rgamma at a pole, z = 0) cancels nothing
    size = abs(c_even) * peak1 + abs(c_odd) * peak2
    if size == 0:
        return 1.0
    if inner == 0:
        return 1.0 if c_even == 0 or c_odd == 0 else math.inf
    return size / abs(inner)


def _pcfd_series_mp(p, z, bits):
    with mpmath.workprec(bits):
        p = mpmath.mpc(p)
        z = mpmath.mpc(z)
        x = z * z / 2
        eps = mpmath.mpf(2) ** (-bits)

        def kummer(a, b):
            term = mpmath.mpc(1)
            total = mpmath.mpc(1)
            peak = mpmath.mpf(1)
            for k in range(1_000_000):
                term *= (a + k) / (b + k) * x / (k + 1)
                total += term
                mag = abs(term)
                peak = max(peak, mag)
                if mag <= eps * abs(total) and k > abs(a * x) ** 0.5:
                    return total, peak
            raise ConvergenceError("series", "extended-precision 1F1 did not converge")

        m1, peak1 = kummer(-p / 2, mpmath.mpf(1) / 2)
        m2, peak2 = kummer((1 - p) / 2, mpmath.mpf(3) / 2)
        c_even = mpmath.sqrt(mpmath.pi) * mpmath.rgamma((1 - p) / 2)
        c_odd = mpmath.sqrt(2 * mpmath.pi) * z * mpmath.rgamma(-p / 2)
        inner = c_even * m1 - c_odd * m2
        lost_bits = math.log2(_loss(c_even, peak1, c_odd, peak2, inner))
        value = mpmath.exp(p * mpmath.log(2) / 2 - z * z / 4) * inner
        return complex(value), lost_bits


def pcfd_series(p, z, *, rel_tol=1e-12):
    """
    D_p(z) from its Kummer-function representation about the origin.

    The double-precision sum is checked for cancellation; when more than
    ``rel_tol`` would be lost it is redone in extended precision (large
    |p| or |z| make the two Kummer terms nearly cancel).
    """
    p = complex(p)
    z = complex(z)
    try:
        value, lost = _pcfd_series_double(p, z)
    except (ConvergenceError, OverflowError, ZeroDivisionError):
        lost = math.inf
    if lost * _EPS <= rel_tol:
        return value
    bits = 128
    for _ in range(8):
        value, lost_bits = _pcfd_series_mp(p, z, bits)
        if lost_bits + 53 + 16 <= bits:
            return value
        if not math.isfinite(lost_bits):
            break
        bits = int(lost_bits) + 53 + 48
    raise ConvergenceError("series", f"D_{p}({z}): cancellation beyond extended precision")


def _asymptotic_sum(p, z, sign):
    # sum_k c_k (sign / (2 z^2))^k with c_k = prod (p - 2j)(p - 2j - 1) / k!  (sign=-1)
    # or prod (p + 2j + 1)(p + 2j + 2) / k!  (sign=+1)
    inv = 1.0 / (2.0 * z * z)
    term = 1.0 + 0j
    total = 1.0 + 0j
    prev = math.inf
    for k in range(1, 400):
        if sign < 0:
            factor = -(p - 2 * k + 2) * (p - 2 * k + 1) / k
        else:
            factor = (p + 2 * k - 1) * (p + 2 * k) / k
        term *= factor * inv
        mag = abs(term)
        if mag > prev:
            break
        total += term
        prev = mag
        if mag <= _EPS * 0.25 * abs(total):
            return total
    if prev <= 1e-13 * abs(total):
        return total
    raise ConvergenceError(
        "asymptotic", f"expansion for D_{p}({z}) stalls at relative term {prev / abs(total):.1e}"
    )


def pcfd_asymptotic(p, z):
    """
    Large-|z| expansion of D_p(z).

    Uses the single exponential for |arg z| <= pi/2 and adds the
    connection term exp(+z^2/4) z^(-p-1) on either side beyond that.
    """
    p = complex(p)
    z = complex(z)
    theta = cmath.phase(z)
    recessive = cmath.exp(p * cmath.log(z) - 0.25 * z * z) * _asymptotic_sum(p, z, -1)
    if abs(theta) <= 0.5 * math.pi:
        return recessive
    rot = cmath.exp(1j * math.pi * p) if theta > 0 else cmath.exp(-1j * math.pi * p)
    dominant = cmath.exp((-p - 1.0) * cmath.log(z) + 0.25 * z * z) * _asymptotic_sum(p, z, +1)
    return recessive - _SQRT_2PI * rgamma(-p) * rot * dominant


def _value_and_slope(evaluate, p, z):
    # D_p'(z) = -(z/2) D_p(z) + p D_{p-1}(z)
    d = evaluate(p, z)
    return d, -0.5 * z * d + p * evaluate(p - 1.0, z)


def _taylor_step(u, du, zc, w, a):
    """Advance (U, U') from zc to zc + w for U'' = (z^2/4 - a) U."""
    if not (cmath.isfinite(u) and cmath.isfinite(du)):
        raise OverflowError("non-finite state in Weber continuation")
    q0 = 0.25 * zc * zc - a
    c = [u, du]
    val = u + du * w
    der = du
    scale = max(abs(u), abs(du * w))
    wk = w  # w**(k+1) after the update below
    quiet = 0
    for k in range(400):
        nxt = q0 * c[k]
        if k >= 1:
            nxt += 0.5 * zc * c[k - 1]
        if k >= 2:
            nxt += 0.25 * c[k - 2]
        nxt /= (k + 2) * (k + 1)
        c.append(nxt)
        der += (k + 2) * nxt * wk
        wk *= w
        term = nxt * wk
        val += term
        scale = max(scale, abs(term))
        quiet = quiet + 1 if abs(term) * (k + 3) <= _EPS * 0.125 * scale else 0
        if quiet >= 3:
            if not (cmath.isfinite(val) and cmath.isfinite(der)):
                raise OverflowError("non-finite state in Weber continuation")
            return val, der
        if not cmath.isfinite(term):
            raise OverflowError("non-finite state in Weber continuation")
    raise ConvergenceError("continuation", f"Taylor step from {zc} by {w} did not converge")


def _walk(p, u, du, z_from, z_to):
    """
    Carry (U, U') from z_from to z_to along a straight line.

    Returns the value at z_to and the amplification |T| |(U, U')_0| / |U_1|
    of a relative anchor error, with T the transfer matrix of the walk.
    """
    a = complex(p) + 0.5
    span = z_to - z_from
    length = abs(span)
    if length == 0.0:
        return u, 1.0
    size0 = math.hypot(abs(u), abs(du))
    direction = span / length
    cols = [(1.0 + 0j, 0j), (0j, 1.0 + 0j)]
    done = 0.0
    zc = z_from
    while done < length:
        local = max(abs(zc), 1.0) * 0.5 + math.sqrt(abs(a)) + 1.0
        step = min(1.5 / local, length - done)
        w = direction * step
        try:
            u, du = _taylor_step(u, du, zc, w, a)
            cols = [_taylor_step(c0, c1, zc, w, a) for c0, c1 in cols]
        except OverflowError:
            return complex("nan"), math.inf
        done += step
        zc = z_from + direction * done
    norm_t = math.hypot(*(abs(x) for col in cols for x in col))
    if u == 0 or not math.isfinite(norm_t):
        return u, math.inf
    return u, norm_t * size0 / abs(u)


def pcfd_continued(p, z, *, max_amplification=1e5, anchor="best"):
    """
    D_p(z) for moderate |z| by continuing Weber's equation along the ray.

    Two walks are available: outward from the series anchor at
    ``SERIES_RADIUS`` and inward from the asymptotic anchor at
    ``ASYMPTOTIC_RADIUS``.  The better-conditioned one is returned.  Near a
    Stokes line with large |order|, D_p can be recessive towards both
    anchors; then the asymptotic expansion at z itself is used if it
    converges, and failing that the series at z in extended precision.

    ``anchor="series"`` or ``"asymptotic"`` forces one walk and skips the
    fallbacks, which is what a cross-check between regimes needs.
    """
    p = complex(p)
    z = complex(z)
    r = abs(z)
    if r == 0.0:
        return pcfd_series(p, z)
    unit = z / r
    inner = unit * min(SERIES_RADIUS, r)
    outer = unit * max(ASYMPTOTIC_RADIUS, r)
    walks = {"series": (pcfd_series, inner), "asymptotic": (pcfd_asymptotic, outer)}
    if anchor != "best":
        if anchor not in walks:
            raise ValueError(f"anchor must be 'best', 'series' or 'asymptotic', got {anchor!r}")
        evaluate, start = walks[anchor]
        u, du = _value_and_slope(evaluate, p, start)
        return _walk(p, u, du, start, z)[0]
    best = None
    for evaluate, start in walks.values():
        try:
            u, du = _value_and_slope(evaluate, p, start)
        except (ConvergenceError, OverflowError):
            continue
        val, amp = _walk(p, u, du, start, z)
        if best is None or amp < best[1]:
            best = (val, amp)
    if best is not None and best[1] <= max_amplification:
        return best[0]
    try:
        return pcfd_asymptotic(p, z)
    except ConvergenceError:
        pass
    # last resort: the entire-function series at z itself, in extended precision
    return pcfd_series(p, z)


def parabolic_cylinder_d(order, z):
    """
    Parabolic cylinder function D_order(z) for complex order and argument.

    Parameters
    ----------
    order : complex
    z : complex
        ``|z| <= 1e4``.

    Raises
    ------
    ValueError
        If ``|z|`` exceeds the supported range.
    ConvergenceError
        If the regime in charge fails to converge; ``err.regime`` names it.
    """
    z = complex(z)
    r = abs(z)
    if r > MAX_ARGUMENT:
        raise ValueError(f"|z| = {r:g} outside supported range {MAX_ARGUMENT:g}")
    if r <= SERIES_RADIUS:
        return pcfd_series(order, z)
    if r <= ASYMPTOTIC_RADIUS:
        return pcfd_continued(order, z)
    return pcfd_asymptotic(order, z)
