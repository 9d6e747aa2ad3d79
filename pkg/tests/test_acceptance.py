"""
Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with the measured numbers
and then asserts.  Under pytest the lines are also collected and repeated
in a section at the end of the run; ``python3 tests/test_acceptance.py``
runs the criteria directly and prints only the lines.
"""

import math
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from nhqa.analytic import landau_zener_probability, weber_params, weber_transition_probability
from nhqa.model import make_params, min_gap_scan
from nhqa.propagate import IntegratorConfig, integrate, integrate_full
from nhqa.runs import scaling
from nhqa.schedule import make_schedule
from nhqa.special import (
    ASYMPTOTIC_RADIUS,
    SERIES_RADIUS,
    complex_gamma,
    parabolic_cylinder_d,
    pcfd_asymptotic,
    pcfd_continued,
    pcfd_series,
)

FINAL_ONLY = IntegratorConfig(output_samples=2)


def report(tag, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {tag}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _final(params, kind="linear", config=FINAL_ONLY):
    return integrate(params, make_schedule(kind, params), config)


def test_criterion_1_hermitian_fig1():
    started = time.perf_counter()
    p = make_params(2, 0, 1.5e4, 40)
    got = _final(p).final_transition
    elapsed = time.perf_counter() - started
    lz = landau_zener_probability(p)
    within = all(3e-8 / 2 <= v <= 3e-8 * 2 for v in (got, lz))
    report(
        1,
        within and elapsed <= 30,
        f"P_tau = {got:.4g}, LZ = {lz:.4g} (window [1.5e-8, 6e-8]), {elapsed:.1f} s",
    )


def test_criterion_2_dissipative_fig1():
    p = make_params(2, 0.0025, 1.5e4, 40)
    tr = _final(p, config=IntegratorConfig())
    ps = tr.survival_prob
    monotone = bool(np.all(np.diff(ps) <= 0))
    ok = tr.final_transition >= 0.999 and ps[0] == 1 and monotone
    report(2, ok, f"P_tau = {tr.final_transition:.6f}, P_s(0) = {ps[0]}, P_s non-increasing: {monotone}")


def test_criterion_3_nonlinear_fig3():
    p = make_params(2, 7.5e-5, 5.5e4, 40)
    tr = _final(p, "nonlinear")
    pt, ps = tr.final_transition, tr.final_survival
    ok = abs(pt / 1.2e-2 - 1) <= 0.5 and abs(ps / 1.6e-2 - 1) <= 0.5
    report(3, ok, f"P_tau = {pt:.4g} (1.2e-2 +/- 50%), P_s = {ps:.4g} (1.6e-2 +/- 50%)")


def test_criterion_4_minimum_gap():
    p = make_params(2, 0.1, 1e3, 20)
    _, gap = min_gap_scan(p, make_schedule("linear", p))
    target = 0.1 / math.sqrt(4 + 0.01)
    rel = abs(gap / target - 1)
    report(4, rel <= 0.01, f"gap_min = {gap:.6f} vs {target:.6f}, relative deviation {rel:.2e}")


def test_criterion_5_landau_zener_suite():
    # nu = tau / (g N): 30 evenly spaced values across the band per N
    worst = (0.0, None, None)
    for log2n in (8, 10):
        n = 2**log2n
        for nu in np.linspace(0.05, 1.5, 30):
            p = make_params(2, 0, nu * 2 * n, log2n)
            got = _final(p).final_transition
            lz = -math.expm1(-2 * math.pi * nu)
            rel = abs(got - lz) / lz
            if rel > worst[0]:
                worst = (rel, log2n, nu)
    rel, log2n, nu = worst
    report(5, rel <= 0.05, f"largest |P - LZ| / LZ = {rel:.3f} at N = 2^{log2n}, nu = {nu:.3f} (limit 0.05)")


def test_criterion_6_reduction_oracle():
    rng = np.random.default_rng(6)
    worst_dev = worst_leak = 0.0
    cases = 0
    for n in (4, 8, 16):
        for kind in ("linear", "nonlinear", "linear"):
            delta = rng.uniform(1e-4, 0.05) if kind == "nonlinear" else rng.choice([0.0, rng.uniform(0, 0.05)])
            p = make_params(rng.uniform(0.2, 3), delta, rng.uniform(1, 200), int(math.log2(n)))
            sched = make_schedule(kind, p)
            cfg = IntegratorConfig(output_samples=400)
            full = integrate_full(n, int(rng.integers(1, n + 1)), sched, cfg)
            red = integrate(p, sched, cfg)
            worst_dev = max(worst_dev, float(np.max(np.abs(full.reduced.amplitudes - red.amplitudes))))
            worst_leak = max(worst_leak, float(np.max(full.leakage)))
            cases += 1
    ok = worst_dev <= 1e-8 and worst_leak < 1e-10
    report(6, ok, f"{cases} cases: max amplitude deviation {worst_dev:.2e}, max out-of-plane {worst_leak:.2e}")


def test_criterion_7_analytic_oracle():
    rng = np.random.default_rng(7)
    worst = 0.0
    failures = 0
    for k in range(20):
        log2n = int(rng.integers(2, 13))
        delta = 0.0 if k % 4 == 0 else float(rng.uniform(0, 0.05))
        p = make_params(rng.uniform(0.5, 3), delta, rng.uniform(10, 1e3), log2n)
        exact = weber_transition_probability(weber_params(p))
        got = _final(p).final_transition
        err = abs(exact - got)
        rel = err / max(abs(exact), 1e-300)
        if not (rel <= 1e-3 or err <= 1e-9):
            failures += 1
        worst = max(worst, min(rel, err / 1e-9 * 1e-3))
    report(7, failures == 0, f"20 cases, {failures} outside 0.1% / 1e-9; worst normalized deviation {worst:.2e}")


def test_criterion_8a_ln_n_scaling():
    started = time.perf_counter()
    res = scaling([10, 14, 18, 22, 26, 30], 0.9, 0.01, 2.0)
    elapsed = time.perf_counter() - started
    taus = ", ".join(f"{r['tau_star']:.1f}" for r in res.rows)
    r2 = res.fit["r2"]
    report("8a", r2 >= 0.98 and elapsed <= 600, f"tau* = [{taus}] vs ln N: R^2 = {r2:.4f} (need 0.98), {elapsed:.0f} s")


def test_criterion_8b_hermitian_linear_in_n():
    started = time.perf_counter()
    res = scaling([9, 10, 11, 12], 0.9, 0.0, 2.0)
    elapsed = time.perf_counter() - started
    ratios = [r["ratio_to_lz"] for r in res.rows]
    ok = all(abs(q - 1) <= 0.10 for q in ratios) and elapsed <= 600
    shown = ", ".join(f"{q:.3f}" for q in ratios)
    report("8b", ok, f"tau*/tau_LZ for N = 2^9..2^12: [{shown}] (within 10%), {elapsed:.0f} s")


def test_criterion_9_special_functions():
    gamma_err = max(
        abs(abs(complex_gamma(1 + 1j * y)) ** 2 / (math.pi * y / math.sinh(math.pi * y)) - 1)
        for y in (0.1, 0.5, 1.0, 2.0, 3.0)
    )
    rec_err = 0.0
    for p in (-0.3j, -0.02 - 1.5j, -1 - 0.7j):
        for z in (1 + 1j, 3 - 2j, 6 * (1 + 1j), -20 * (1 + 1j), 50j):
            terms = (
                parabolic_cylinder_d(p + 1, z),
                z * parabolic_cylinder_d(p, z),
                p * parabolic_cylinder_d(p - 1, z),
            )
            rec_err = max(rec_err, abs(terms[0] - terms[1] + terms[2]) / max(map(abs, terms)))
    overlap_err = 0.0
    for p in (-0.01j, -0.5j, -1 - 0.5j, -2j):
        for angle in (0.25 * math.pi, 0.75 * math.pi, -0.25 * math.pi, -0.75 * math.pi):
            u = complex(math.cos(angle), math.sin(angle))
            # each boundary value is reached from the opposite regime's anchor
            a = pcfd_series(p, SERIES_RADIUS * u)
            b = pcfd_continued(p, SERIES_RADIUS * u, anchor="asymptotic")
            c = pcfd_continued(p, ASYMPTOTIC_RADIUS * u, anchor="series")
            d = pcfd_asymptotic(p, ASYMPTOTIC_RADIUS * u)
            overlap_err = max(overlap_err, abs(a - b) / abs(a), abs(c - d) / abs(d))
    ok = gamma_err <= 1e-12 and rec_err < 1e-9 and overlap_err <= 1e-8
    report(
        9,
        ok,
        f"Gamma identity {gamma_err:.1e} (1e-12), recurrence {rec_err:.1e} (1e-9), regime overlap {overlap_err:.1e} (1e-8)",
    )


def test_criterion_10_schedule_identities():
    ident = fd_err = 0.0
    for delta in (0.3, 0.01, 1e-4, 7.5e-5):
        tau = 5.5e4
        s = make_schedule("nonlinear", make_params(2, delta, tau, 40))
        ident = max(ident, abs(s.profile_f(0.0)), abs(s.profile_f(tau) - 1), abs(s.profile_f(tau / 2) - 0.5))
        dt = tau * 1e-6
        for t in np.linspace(0.01 * tau, 0.99 * tau, 99):
            fd = (s.profile_f(t + dt) - s.profile_f(t - dt)) / (2 * dt)
            exact = s.profile_rate(s.profile_f(t))
            fd_err = max(fd_err, abs(fd / exact - 1))
    ok = ident <= 1e-12 and fd_err <= 1e-6
    report(10, ok, f"boundary identities {ident:.1e} (1e-12), df/dt finite difference {fd_err:.1e} (1e-6)")


if __name__ == "__main__":
    import sys

    def order(name):
        tag = name.split("_")[2]
        return int(tag.rstrip("ab")), tag

    failed = 0
    names = sorted((n for n in globals() if n.startswith("test_criterion_")), key=order)
    for name in names:
        try:
            globals()[name]()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
