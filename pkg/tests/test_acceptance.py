"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with the measured figure next to its tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see the report lines.
"""

import math
import time

import numpy as np
import pytest

from casimir1d import (
    BoxSpec,
    CavityConfig,
    cavity_det_s,
    cavity_det_s_factorized,
    casimir_force,
    casimir_force_series,
    compose_adjacent,
    delta_scatterer,
    det_s,
    energy_difference_oracle,
    evaluate,
    force_from_energy_fd,
    ideal_force_3d,
    lc_shunt_scatterer,
    perfect_mirror,
    QuadratureSpec,
    rect_barrier_scatterer,
    round_trip_expansion,
    s_to_transfer,
    transfer_to_s,
    unitarity_residual,
)

PI_24 = math.pi / 24.0


def report(name: str, ok: bool, detail: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return ok


def delta_cavity(g1, g2, distance):
    return CavityConfig(delta_scatterer(g1), delta_scatterer(g2), distance)


def test_criterion_1_perfect_mirror_force():
    start = time.perf_counter()
    value = casimir_force(CavityConfig(perfect_mirror(), perfect_mirror(), 1.0)).value
    elapsed = time.perf_counter() - start
    dev = abs(value - (-PI_24))
    ok = dev < 1e-9 and elapsed < 1.0
    assert report(
        "criterion 1 (perfect-mirror force)",
        ok,
        f"|F + pi/24| = {dev:.2e} (tol 1e-9), runtime {elapsed:.3f}s (< 1s)",
    )


def test_criterion_2_inverse_square_law():
    worst = 0.0
    for L in (0.5, 1.0, 3.0):
        f1 = casimir_force(CavityConfig(perfect_mirror(), perfect_mirror(), L)).value
        f2 = casimir_force(CavityConfig(perfect_mirror(), perfect_mirror(), 2 * L)).value
        worst = max(worst, abs(f2 / f1 - 0.25) / 0.25)
    ok = worst < 1e-10
    assert report(
        "criterion 2 (1/L^2 law)", ok, f"max rel dev of F(2L)/F(L) from 1/4: {worst:.2e} (tol 1e-10)"
    )


def test_criterion_3_scaling_collapse():
    fa = casimir_force(delta_cavity(2.0, 2.0, 1.0)).value * 1.0**2
    fb = casimir_force(delta_cavity(1.0, 1.0, 2.0)).value * 2.0**2
    dev = abs(fa - fb) / abs(fb)
    ok = dev < 1e-9
    assert report(
        "criterion 3 (scaling collapse)",
        ok,
        f"F L^2 at (g=2, L=1) vs (g=1, L=2): rel dev {dev:.2e} (tol 1e-9)",
    )


def test_criterion_4_perfect_mirror_limit():
    start = time.perf_counter()
    values = [casimir_force(delta_cavity(g, g, 1.0)).value for g in (10.0, 1e2, 1e3, 1e4)]
    elapsed = time.perf_counter() - start
    monotone = all(a > b for a, b in zip(values, values[1:]))
    bounded = all(v > -PI_24 for v in values)
    approaching = abs(values[-1] - (-PI_24)) < abs(values[0] - (-PI_24))
    ok = monotone and bounded and approaching and elapsed < 5.0
    assert report(
        "criterion 4 (perfect-mirror limit)",
        ok,
        f"F(g=10..1e4) = {[f'{v:.6f}' for v in values]}, monotone={monotone}, "
        f"bounded below by -pi/24={bounded}, runtime {elapsed:.2f}s (< 5s)",
    )


def test_criterion_5_method_cross_agreement():
    worst = 0.0
    worst_tail = 0.0
    for gamma in (0.1, 1.0, 10.0):
        config = delta_cavity(gamma, gamma, 1.0)
        quad_f = casimir_force(config).value
        series = casimir_force_series(config, 400)
        fd_f = force_from_energy_fd(config, 1e-4).value
        worst_tail = max(worst_tail, series.error)
        pairs = (
            abs(quad_f - series.value) / abs(quad_f),
            abs(quad_f - fd_f) / abs(quad_f),
            abs(series.value - fd_f) / abs(series.value),
        )
        worst = max(worst, *pairs)
    ok = worst < 1e-5 and worst_tail < 1e-10
    assert report(
        "criterion 5 (method cross-agreement)",
        ok,
        f"max pairwise rel dev {worst:.2e} (tol 1e-5), series tail estimate "
        f"{worst_tail:.2e} (< 1e-10)",
    )


def test_criterion_6_unitarity_and_determinant_suite():
    models = [
        delta_scatterer(0.7),
        delta_scatterer(2.5),
        rect_barrier_scatterer(1.3, 0.6),
        lc_shunt_scatterer(50.0, 20.0),
        perfect_mirror(),
    ]
    ks = np.geomspace(1e-3, 1e3, 200)
    worst_unitarity = worst_det = worst_roundtrip = 0.0
    for model in models:
        for k in ks:
            s = evaluate(model, complex(k))
            worst_unitarity = max(worst_unitarity, unitarity_residual(s))
            if abs(s.rbar) > 1e-12:
                worst_det = max(worst_det, abs(det_s(s) * s.rbar.conjugate() + s.r))
            if abs(s.tbar) > 1e-6:
                back = transfer_to_s(s_to_transfer(s))
                num = max(
                    abs(back.t - s.t), abs(back.rbar - s.rbar),
                    abs(back.r - s.r), abs(back.tbar - s.tbar),
                )
                den = max(abs(s.t), abs(s.rbar), abs(s.r), abs(s.tbar))
                worst_roundtrip = max(worst_roundtrip, num / den)
    rng = np.random.default_rng(42)
    worst_factorization = 0.0
    for _ in range(200):
        g1, g2 = rng.uniform(0.1, 8.0, size=2)
        config = delta_cavity(g1, g2, rng.uniform(0.2, 3.0))
        k = rng.uniform(0.05, 20.0)
        a = cavity_det_s(config, k)
        b = cavity_det_s_factorized(config, k)
        worst_factorization = max(worst_factorization, abs(a - b) / abs(b))
    ok = max(worst_unitarity, worst_det, worst_roundtrip, worst_factorization) < 1e-10
    assert report(
        "criterion 6 (unitarity/det suite)",
        ok,
        f"unitarity {worst_unitarity:.2e}, det identity {worst_det:.2e}, "
        f"S<->T round trip {worst_roundtrip:.2e}, det factorization "
        f"{worst_factorization:.2e} (all < 1e-10)",
    )


def test_criterion_7_geometric_series_composition():
    rng = np.random.default_rng(1234)
    ok = True
    worst_margin = 0.0
    for _ in range(20):
        g1, g2 = rng.uniform(0.1, 10.0, size=2)
        k = rng.uniform(0.05, 20.0)
        s1 = evaluate(delta_scatterer(g1), k)
        s2 = evaluate(delta_scatterer(g2), k)
        closed = compose_adjacent(s1, s2)
        truncated = round_trip_expansion(s1, s2, 30)
        z = abs(s1.rbar * s2.r)
        bound = z**31 / (1.0 - z)
        err = max(
            abs(getattr(truncated, attr) - getattr(closed, attr))
            for attr in ("t", "rbar", "r", "tbar")
        )
        # the 1e-15 allowance covers arithmetic roundoff where the analytic
        # bound itself is far below machine precision
        ok = ok and err <= bound + 1e-15
        worst_margin = max(worst_margin, err - bound)
    assert report(
        "criterion 7 (geometric-series composition)",
        ok,
        f"20 random pairs at n=30: max (error - analytic bound) = {worst_margin:.2e} (<= 0)",
    )


def test_criterion_8_mode_sum_oracle():
    start = time.perf_counter()
    target = (-PI_24) * (1.0 / 1.0 - 1.0 / 2.0)
    deviations = []
    for box_length in (500.0, 1000.0, 2000.0, 4000.0):
        box = BoxSpec(box_length, k_max=80.0, resolution=4, window_fraction=0.5)
        got = energy_difference_oracle(perfect_mirror(), perfect_mirror(), 1.0, 2.0, box)
        deviations.append(abs(got - target) / abs(target))
    elapsed = time.perf_counter() - start
    within = all(d < 1e-2 for d in deviations)
    decreasing = all(a > b for a, b in zip(deviations, deviations[1:]))
    ok = within and decreasing and elapsed < 60.0
    assert report(
        "criterion 8 (mode-sum oracle)",
        ok,
        f"rel devs over 3 box doublings {[f'{d:.2e}' for d in deviations]} "
        f"(< 1e-2, decreasing), runtime {elapsed:.1f}s (< 60s)",
    )


def test_criterion_9_attraction():
    rng = np.random.default_rng(2718)
    spec = QuadratureSpec(rel_tol=1e-8, abs_tol=1e-13)
    worst = -math.inf
    for _ in range(100):
        g1, g2 = rng.uniform(1e-12, 100.0, size=2)
        distance = rng.uniform(0.1, 10.0)
        worst = max(worst, casimir_force(delta_cavity(g1, g2, distance), spec).value)
    ok = worst < 0.0
    assert report(
        "criterion 9 (attraction)",
        ok,
        f"100 random (g1, g2, L): max force {worst:.3e} (< 0)",
    )


def test_criterion_10_barrier_delta_limit():
    g, a = 1.0, 1e-5
    barrier = rect_barrier_scatterer(g / (2.0 * a), a)
    reference = delta_scatterer(g)
    worst = 0.0
    for k in np.geomspace(0.1, 10.0, 50):
        rb = evaluate(barrier, complex(k)).r
        rd = evaluate(reference, complex(k)).r
        worst = max(worst, abs(rb - rd) / abs(rd))
    ok = worst < 1e-4
    assert report(
        "criterion 10 (barrier -> delta limit)",
        ok,
        f"max rel dev of r over k in [0.1, 10]: {worst:.2e} (tol 1e-4)",
    )


def test_ideal_3d_utility_scaling():
    # the 3D result is a closed-form utility only; check its scaling contract
    ratio = ideal_force_3d(1.0, 1.0) / ideal_force_3d(1.0, 2.0)
    dev = abs(ratio - 16.0) / 16.0
    unit = abs(ideal_force_3d(240.0 / math.pi**2, 1.0) - 1.0)
    ok = dev < 1e-12 and unit < 1e-12
    assert report(
        "utility (ideal 3D force scaling)",
        ok,
        f"1/L^4 ratio rel dev {dev:.2e}, normalization dev {unit:.2e} (tol 1e-12)",
    )
