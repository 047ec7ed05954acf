"""Exit criteria. Each test reports one PASS/FAIL line in the terminal summary."""

import itertools
import math
import time

import numpy as np
import pytest

from smlg_lab import harness
from smlg_lab.editdist import substring_ed_bruteforce, substring_edit_distance
from smlg_lab.lic import identity_reduction, matcher_scheme, ov_bruteforce_scheme, ov_to_smlg_reduction, transfer_index
from smlg_lab.model import OvInstance
from smlg_lab.ov import partition_and_solve, solve_ov_bruteforce, split_plan, verify_plan
from smlg_lab.reduction import Variant, assemble_graph, build_pattern, pattern_length
from smlg_lab.sic import build_sic_graph, sic_query

pytestmark = pytest.mark.acceptance


def test_c01_reduction_correctness_cyclic(report_criterion):
    start = time.perf_counter()
    rep = harness.run_verify_reduction(1000, 8, 8, 6, seed=2024, variant=Variant.CYCLIC)
    elapsed = time.perf_counter() - start
    planted = sum(r.planted for r in rep.results)
    ok = rep.ok and len(rep.results) == 1000 and planted == 500 and elapsed < 30
    report_criterion(
        "C1 reduction correctness (cyclic, 1000 trials)",
        ok,
        f"failures={len(rep.failures)} structure={len(rep.structure_failures)} planted={planted} {elapsed:.1f}s",
    )
    assert ok, rep.summary()


def test_c02_m_greater_than_n(report_criterion):
    rep = harness.run_verify_reduction(
        200, 4, 32, 6, seed=2025, variant=Variant.CYCLIC, min_n=1, min_m=5
    )
    in_regime = all(1 <= r.N <= 4 and 5 <= r.M <= 32 for r in rep.results)
    ok = rep.ok and in_regime
    report_criterion("C2 M > N regime (200 trials)", ok, f"failures={len(rep.failures)} max_M={max(r.M for r in rep.results)}")
    assert ok, rep.summary()


def test_c03_acyclic_construction(report_criterion):
    rep = harness.run_verify_reduction(500, 8, 8, 6, seed=2026, variant=Variant.ACYCLIC)
    dag_ok = all(r.dag and r.back_edges == 0 and r.M <= r.N for r in rep.results)
    rng = np.random.default_rng(2026)
    cyclic_ok = True
    for N in range(1, 9):
        red = assemble_graph(harness.random_vectors(rng, N, 4, 0.5), 4, Variant.CYCLIC)
        cyclic_ok &= len(red.back_edges) == 2 and set(red.back_edges) <= set(red.graph.edges)
    ok = rep.ok and dag_ok and cyclic_ok
    report_criterion("C3 acyclic construction (500 trials, M <= N)", ok, f"failures={len(rep.failures)} dag={dag_ok} cyclic_back_edges={cyclic_ok}")
    assert ok, rep.summary()


def test_c04_size_laws(report_criterion):
    rng = np.random.default_rng(2027)
    lengths_ok = True
    for _ in range(500):
        M, d = int(rng.integers(1, 33)), int(rng.integers(1, 17))
        Y = harness.random_vectors(rng, M, d, 0.5)
        lengths_ok &= len(build_pattern(Y, d)) == M * (d + 2) + 2 == pattern_length(M, d)
    rows = harness.reduction_sizes(range(1, 65), range(1, 17), seed=2027)
    fit = harness.linear_fit([r["dN"] for r in rows], [r["e"] for r in rows])
    ok = lengths_ok and fit.r2 >= 0.999
    report_criterion(
        "C4 size laws",
        ok,
        f"|P| exact={lengths_ok} |E|~dN slope={fit.slope:.3f} intercept={fit.intercept:.1f} R2={fit.r2:.5f} (need >= 0.999)",
    )
    assert lengths_ok
    assert fit.r2 >= 0.999


def test_c05_split_plan_certification(report_criterion):
    grid = [
        (a, dl, b)
        for a, dl, b in itertools.product([0.5, 1, 1.5, 2, 3], [0.25, 0.5, 1, 1.5], [0.5, 1, 1.5, 2])
        if dl < 1 or b < 1
    ]
    assert len(grid) >= 40
    bad = []
    worst = math.inf
    for (alpha, delta, beta), n in itertools.product(grid, [10**2, 10**3, 10**4, 10**6]):
        plan = split_plan(alpha, delta, beta, n)
        rep = verify_plan(plan, n, alpha, delta, beta, tol=1e-9)
        need = min(plan.eps, plan.eps_prime) / 2
        slack = min(2 - rep.cond_a_exp, 2 - rep.cond_b_exp) - need
        worst = min(worst, slack)
        if not (rep.cond_at_ok and rep.cond_bt_ok and rep.cond_c_ok and rep.cond_d_ok and slack >= 0):
            bad.append((alpha, delta, beta, n))
    ok = not bad
    report_criterion("C5 split-plan certification", ok, f"points={len(grid)}x4 bad={len(bad)} worst_extra_margin={worst:.4f}")
    assert ok, bad


def test_c06_partition_scheduler(report_criterion):
    rng = np.random.default_rng(2028)
    bad = 0
    for _ in range(1000):
        n, d = int(rng.integers(1, 17)), int(rng.integers(1, 7))
        inst = harness.random_ov(rng, n, n, d)
        N, M = int(rng.integers(1, n + 1)), int(rng.integers(1, n + 1))
        res = partition_and_solve(inst, N, M)
        if res.answer != solve_ov_bruteforce(inst) or res.subproblems != math.ceil(n / N) * math.ceil(n / M):
            bad += 1
    report_criterion("C6 partition scheduler (1000 instances)", bad == 0, f"bad={bad}")
    assert bad == 0


def test_c07_index_transfer(report_criterion):
    rng = np.random.default_rng(2029)
    transferred = transfer_index(ov_to_smlg_reduction(Variant.CYCLIC), matcher_scheme())
    bad = 0
    for i in range(1000):
        N, M, d = int(rng.integers(1, 9)), int(rng.integers(1, 9)), int(rng.integers(1, 7))
        inst = harness.random_ov(rng, N, M, d, planted=i % 2 == 0)
        if transferred.query(transferred.build(inst.X), inst.Y) != solve_ov_bruteforce(inst):
            bad += 1
    base = ov_bruteforce_scheme()
    same = transfer_index(identity_reduction(), base)
    diff = 0
    for _ in range(100):
        N, M, d = int(rng.integers(1, 9)), int(rng.integers(1, 9)), int(rng.integers(1, 7))
        inst = harness.random_ov(rng, N, M, d)
        if same.query(same.build(inst.X), inst.Y) != base.query(base.build(inst.X), inst.Y):
            diff += 1
    ok = bad == 0 and diff == 0
    report_criterion("C7 index transfer", ok, f"ov-via-smlg mismatches={bad}/1000 identity mismatches={diff}/100")
    assert ok


def test_c08_set_intersection(report_criterion):
    rng = np.random.default_rng(2030)
    bad = queries = 0
    for _ in range(200):
        n, u = int(rng.integers(1, 11)), int(rng.integers(1, 13))
        sets = [{int(v) for v in np.nonzero(rng.random(u) < 0.3)[0] + 1} for _ in range(n)]
        g = build_sic_graph(sets, u)
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            queries += 1
            bad += sic_query(g, i, j) != bool(sets[i - 1] & sets[j - 1])
    report_criterion("C8 set intersection queries", bad == 0, f"queries={queries} bad={bad}")
    assert bad == 0


def test_c09_substring_edit_distance(report_criterion):
    texts = ["".join(t) for k in range(8) for t in itertools.product("ab", repeat=k)]
    patterns = ["".join(t) for k in range(1, 5) for t in itertools.product("ab", repeat=k)]
    bad = 0
    for t, p in itertools.product(texts, patterns):
        v = substring_edit_distance(t, p)
        if v != substring_ed_bruteforce(t, p) or (v == 0) != (p in t):
            bad += 1
    report_criterion("C9 substring edit distance (exhaustive)", bad == 0, f"pairs={len(texts) * len(patterns)} bad={bad}")
    assert bad == 0


def test_c10_matcher_scaling(report_criterion):
    sizes = [(n, n, 4) for n in (2, 4, 8, 16, 32, 64)]
    attempts = []
    for attempt in range(3):
        records = harness.bench_matcher(sizes, repetitions=7, seed=2031 + attempt, inner_loops=3)
        slope, points = harness.scaling_slope(records)
        attempts.append(slope)
        if 0.8 <= slope <= 1.2:
            break
    span = points[-1][0] / points[0][0]
    within = 0.8 <= attempts[-1] <= 1.2
    # Informative only: timing noise may push the slope out of range.
    report_criterion(
        "C10 matcher scaling (informative)",
        within,
        f"loglog slope={attempts[-1]:.3f} attempts={[round(s, 3) for s in attempts]} |E||P| span={span:.0f}x",
    )
    assert span >= 1000
    assert math.isfinite(attempts[-1])
