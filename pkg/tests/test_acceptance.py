"""Acceptance gate: one test per exit criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` and see the "acceptance criteria"
section at the end of the report.
"""

import math

import numpy as np

from conftest import ACCEPTANCE_RESULTS, partial_trace_oracle, partial_transpose_oracle, trace_norm_oracle
from kyfan import bounds, criteria, states
from kyfan.criteria import CriterionParams
from kyfan.linalg import ky_fan_norm

DIMS = [(2, 2), (2, 3), (3, 3)]
GRID_5x5 = [CriterionParams(a, b) for a in np.linspace(0, 10, 5) for b in np.linspace(0, 10, 5)]


def record(name, ok, detail):
    ACCEPTANCE_RESULTS.append((name, bool(ok), detail))
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


def test_01_chessboard_example():
    rho = states.mix_white_noise(states.chessboard_state(), 0.1)
    min_pt = np.linalg.eigvalsh(partial_transpose_oracle(rho.matrix, 3, 3)).min()
    ccnr = criteria.ccnr_test(rho).margin
    margin = criteria.kyfan_criterion_test(rho, CriterionParams(250, 240)).margin
    ok = min_pt >= -1e-9 and ccnr <= 1e-9 and abs(margin - 0.0027) <= 5e-4
    record(
        "1 chessboard p=0.9",
        ok,
        f"min PT eig {min_pt:.3e} (>= -1e-9), CCNR margin {ccnr:.3e} (<= 1e-9), "
        f"Ky Fan margin {margin:.6f} vs 0.0027 +- 5e-4",
    )


def test_02_tiles_concurrence():
    tiles = states.tiles_ppt_state()
    c1 = bounds.concurrence_lower_bound(tiles, CriterionParams(1, 1)).bound
    c100 = bounds.concurrence_lower_bound(tiles, CriterionParams(100, 100)).bound
    ok = abs(c1 - 0.05399) <= 1e-4 and abs(c100 - 0.055549) <= 1e-5
    record("2 tiles concurrence bounds", ok, f"alpha=beta=1: {c1:.6f} vs 0.05399 +- 1e-4; "
           f"alpha=beta=100: {c100:.6f} vs 0.055549 +- 1e-5")


def test_03_noise_threshold():
    w = bounds.detection_threshold(states.tiles_ppt_state(), CriterionParams(5, 5), "concurrence")
    record("3 tiles noise threshold", abs(w - 0.1177) <= 2e-3, f"{w:.6f} vs 0.1177 +- 2e-3")


def test_04_ccnr_reduction():
    worst = 0.0
    for i in range(200):
        rho = states.random_density(*DIMS[i % 3], seed=1000 + i)
        diff = abs(criteria.kyfan_criterion_test(rho, CriterionParams()).margin - criteria.ccnr_test(rho).margin)
        worst = max(worst, diff)
    record("4 CCNR reduction", worst <= 1e-10, f"max |difference| over 200 states {worst:.2e} (<= 1e-10)")


def test_05_soundness():
    false_detections = 0
    worst = -np.inf
    unclamped = 0
    for i in range(1000):
        dims = DIMS[i % 3]
        rho = states.random_separable(*dims, terms=1 + i % 6, seed=i)
        for p in GRID_5x5:
            m = criteria.kyfan_margin(rho, p)
            worst = max(worst, m)
            false_detections += m > 1e-9
            c = bounds.concurrence_lower_bound(rho, p)
            n = bounds.cren_lower_bound(rho, p)
            unclamped += c.bound != 0.0 or n.bound != 0.0
    ok = false_detections == 0 and unclamped == 0
    record("5 soundness sweep", ok, f"{false_detections} false detections and {unclamped} unclamped bounds "
           f"in 25000 evaluations; max margin {worst:.2e}")


def test_06_bell_exactness():
    bell = states.bell_state()
    rho_a = partial_trace_oracle(bell.matrix, 2, 2, "A")
    exact_c = math.sqrt(2 * (1 - np.trace(rho_a @ rho_a).real))
    exact_n = np.sum(np.abs(np.linalg.eigvalsh(partial_transpose_oracle(bell.matrix, 2, 2)))) - 1
    c = bounds.concurrence_lower_bound(bell, CriterionParams()).bound
    n = bounds.cren_lower_bound(bell, CriterionParams()).bound
    ok = abs(c - 1) <= 1e-9 and abs(n - 1) <= 1e-9 and abs(c - exact_c) <= 1e-9 and abs(n - exact_n) <= 1e-9
    record("6 Bell exactness", ok, f"concurrence bound {c:.12f} (exact {exact_c:.12f}), "
           f"CREN bound {n:.12f} (exact {exact_n:.12f})")


def test_07_decomposition_identity():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        lam = np.sort(rng.dirichlet(np.ones(3)))[::-1]
        psi = states.pure_from_schmidt(lam, 3, 3)
        for a in range(4):
            for b in range(4):
                lhs, rhs = bounds.pure_M_decomposition_check(psi, CriterionParams(a, b))
                worst = max(worst, abs(lhs - rhs))
    record("7 decomposition identity", worst <= 1e-9, f"max |difference| {worst:.2e} over 1600 cases (<= 1e-9)")


def test_08_oracle_equivalence():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(200):
        m, n = rng.integers(1, 83, size=2)
        A = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        got, ref = ky_fan_norm(A), trace_norm_oracle(A)
        worst = max(worst, abs(got - ref) / ref)
    record("8 Ky Fan norm oracle", worst <= 1e-9, f"max relative error {worst:.2e} on 200 matrices (<= 1e-9)")


def test_09_fig2_ordering():
    tiles = states.tiles_ppt_state()
    worst = np.inf
    for w in np.round(np.arange(0, 0.2001, 0.01), 2):
        rho = states.mix_white_noise(tiles, float(w))
        b7 = bounds.cren_lower_bound(rho, CriterionParams(7, 7)).bound
        b1 = bounds.cren_lower_bound(rho, CriterionParams(1, 1)).bound
        worst = min(worst, b7 - b1)
    record("9 CREN alpha=7 vs alpha=1", worst >= -1e-9, f"min (bound7 - bound1) over 21 points {worst:.3e}")


def test_10_theorem2_witnesses():
    witnesses = {
        "chessboard p=0.9": states.mix_white_noise(states.chessboard_state(), 0.1),
        "tiles": states.tiles_ppt_state(),
    }
    parts, ok = [], True
    for name, rho in witnesses.items():
        enh = criteria.enhanced_realignment_test(rho)
        best, verdict = criteria.optimize_params(rho)
        ok &= rho.is_real() and enh.detected and verdict.detected and verdict.margin > 0
        parts.append(f"{name}: enhanced margin {enh.margin:.4f}, best Ky Fan margin {verdict.margin:.6f} "
                     f"at ({best.alpha:.4g}, {best.beta:.4g})")
    record("10 real-state witnesses", ok, "; ".join(parts))
