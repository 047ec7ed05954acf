"""Experiment driver: seeded instance generation, reduction verification,
matcher benchmarks and split-plan grids.

Every trial draws from its own child of a ``numpy.random.SeedSequence``, so
results do not depend on how trials are scheduled across workers.
"""

from __future__ import annotations

import csv
import io
import itertools
import logging
import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .matcher import match_bruteforce, match_online
from .model import OvInstance, is_dag, serialize_ov
from .ov import HypothesisViolation, solve_ov_bruteforce, split_plan, verify_plan
from .reduction import Variant, assemble_graph, build_pattern, pattern_length

log = logging.getLogger(__name__)

GENERATOR_NAME = "numpy.PCG64(SeedSequence)"
THREADS_ENV = "SMLG_LAB_THREADS"
# Reduction graphs in the verification runs reach a few hundred nodes and
# patterns a few hundred tokens; the memoized oracle handles that easily.
VERIFY_NODE_CAP = 4096
VERIFY_PATTERN_CAP = 1024

BENCH_HEADER = ("n", "m", "d", "variant", "v", "e", "p", "ns", "answer", "seed")


def worker_count(default: int = 1) -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        log.warning("ignoring non-integer %s=%r", THREADS_ENV, raw)
        return default


def trial_rngs(seed: int, count: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.PCG64(child)) for child in np.random.SeedSequence(seed).spawn(count)]


def random_vectors(rng: np.random.Generator, count: int, d: int, p: float) -> list[tuple[int, ...]]:
    bits = rng.random((count, d)) < p
    return [tuple(int(b) for b in row) for row in bits]


def random_ov(
    rng: np.random.Generator,
    N: int,
    M: int,
    d: int,
    p: float = 0.5,
    planted: bool = False,
) -> OvInstance:
    """Random instance; with ``planted`` one random pair is made orthogonal."""
    X = random_vectors(rng, N, d, p)
    Y = random_vectors(rng, M, d, p)
    if planted:
        j = int(rng.integers(N))
        i = int(rng.integers(M))
        Y[i] = tuple(0 if xb else yb for xb, yb in zip(X[j], Y[i]))
    return OvInstance(tuple(X), tuple(Y), d)


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- reduction verification ---------------------------------------------------


@dataclass
class TrialResult:
    index: int
    N: int
    M: int
    d: int
    planted: bool
    ov: bool
    online: bool
    brute: bool | None
    v: int
    e: int
    p: int
    dag: bool
    back_edges: int
    instance: str

    @property
    def agree(self) -> bool:
        return self.online == self.ov and (self.brute is None or self.brute == self.ov)


@dataclass
class VerifyReport:
    variant: str
    trials: int
    seed: int
    generator: str
    results: list[TrialResult] = field(default_factory=list)

    @property
    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if not r.agree]

    @property
    def structure_failures(self) -> list[TrialResult]:
        bad = []
        for r in self.results:
            if r.p != pattern_length(r.M, r.d):
                bad.append(r)
            elif self.variant == Variant.ACYCLIC.value and not (r.dag and r.back_edges == 0):
                bad.append(r)
            elif self.variant == Variant.CYCLIC.value and (r.dag or r.back_edges != 2):
                bad.append(r)
        return bad

    @property
    def ok(self) -> bool:
        return not self.failures and not self.structure_failures

    def summary(self) -> str:
        positives = sum(r.ov for r in self.results)
        lines = [
            f"variant={self.variant}",
            f"trials={self.trials}",
            f"seed={self.seed}",
            f"generator={self.generator}",
            f"positives={positives}",
            f"planted={sum(r.planted for r in self.results)}",
            f"max_v={max((r.v for r in self.results), default=0)}",
            f"max_e={max((r.e for r in self.results), default=0)}",
            f"max_p={max((r.p for r in self.results), default=0)}",
            f"failures={len(self.failures)}",
            f"structure_failures={len(self.structure_failures)}",
        ]
        for r in self.failures + self.structure_failures:
            lines.append(f"FAIL trial={r.index} N={r.N} M={r.M} d={r.d} ov={r.ov} online={r.online} brute={r.brute}")
        return "\n".join(lines) + "\n"


def run_verify_reduction(
    trials: int,
    max_n: int,
    max_m: int,
    max_d: int,
    seed: int,
    variant: Variant | str = Variant.CYCLIC,
    *,
    min_n: int = 1,
    min_m: int = 1,
    min_d: int = 1,
    p: float = 0.5,
    planted_every: int = 2,
    bruteforce: bool = True,
    workers: int | None = None,
) -> VerifyReport:
    """Cross-check matcher, brute-force matcher and the OV oracle on random
    reduction instances.

    Trial ``i`` plants an orthogonal pair when ``i % planted_every == 0``.
    For the acyclic variant M is drawn from [min_m, min(max_m, N)].
    """
    variant = Variant(variant)
    workers = worker_count() if workers is None else workers

    def one(args: tuple[int, np.random.Generator]) -> TrialResult:
        i, rng = args
        N = int(rng.integers(min_n, max_n + 1))
        top_m = min(max_m, N) if variant is Variant.ACYCLIC else max_m
        M = int(rng.integers(min(min_m, top_m), top_m + 1))
        d = int(rng.integers(min_d, max_d + 1))
        planted = planted_every > 0 and i % planted_every == 0
        inst = random_ov(rng, N, M, d, p, planted)
        red = assemble_graph(inst.X, d, variant)
        pat = build_pattern(inst.Y, d)
        g = red.graph
        brute = match_bruteforce(g, pat, VERIFY_NODE_CAP, VERIFY_PATTERN_CAP) if bruteforce else None
        return TrialResult(
            i, N, M, d, planted,
            ov=solve_ov_bruteforce(inst),
            online=match_online(g, pat),
            brute=brute,
            v=g.num_nodes, e=g.num_edges, p=len(pat),
            dag=is_dag(g),
            back_edges=len(red.back_edges),
            instance=serialize_ov(inst),
        )

    results = _map(one, list(enumerate(trial_rngs(seed, trials))), workers)
    return VerifyReport(variant.value, trials, seed, GENERATOR_NAME, sorted(results, key=lambda r: r.index))


# -- benchmarks ---------------------------------------------------------------


@dataclass
class BenchRecord:
    n: int
    m: int
    d: int
    variant: str
    v: int
    e: int
    p: int
    ns: int
    answer: bool
    seed: int

    def row(self) -> list:
        return [self.n, self.m, self.d, self.variant, self.v, self.e, self.p, self.ns, int(self.answer), self.seed]


def bench_matcher(
    sizes: Iterable[tuple[int, int, int]],
    repetitions: int,
    seed: int,
    variant: Variant | str = Variant.CYCLIC,
    p: float = 0.5,
    inner_loops: int = 1,
) -> list[BenchRecord]:
    """Time :func:`match_online` on reduction instances, one row per repetition.

    ``ns`` is the mean wall time of ``inner_loops`` back-to-back calls. Graph
    validation and adjacency caches are warmed before timing.
    """
    variant = Variant(variant)
    sizes = list(sizes)
    records: list[BenchRecord] = []
    for (N, M, d), rng in zip(sizes, trial_rngs(seed, len(sizes))):
        inst = random_ov(rng, N, M, d, p)
        g = assemble_graph(inst.X, d, variant).graph
        pat = build_pattern(inst.Y, d)
        answer = match_online(g, pat)
        for _ in range(repetitions):
            start = time.perf_counter_ns()
            for _ in range(inner_loops):
                match_online(g, pat)
            ns = max(1, (time.perf_counter_ns() - start) // inner_loops)
            records.append(BenchRecord(N, M, d, variant.value, g.num_nodes, g.num_edges, len(pat), ns, answer, seed))
    return records


def write_bench_csv(records: Iterable[BenchRecord], out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for r in records:
        writer.writerow(r.row())


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)


def scaling_slope(records: Iterable[BenchRecord]) -> tuple[float, list[tuple[int, float]]]:
    """Slope of log(median ns) against log(|E|·|P|) across sizes."""
    groups: dict[tuple[int, int, int], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.n, r.m, r.d), []).append(r)
    points = sorted((g[0].e * g[0].p, statistics.median(r.ns for r in g)) for g in groups.values())
    return loglog_slope([x for x, _ in points], [y for _, y in points]), points


# -- size laws ----------------------------------------------------------------


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return LinearFit(float(slope), float(intercept), r2)


def reduction_sizes(
    ns: Iterable[int],
    ds: Iterable[int],
    seed: int,
    variant: Variant | str = Variant.CYCLIC,
    p: float = 0.5,
) -> list[dict]:
    """|V|, |E| of reduction graphs over a grid of (N, d) with random X."""
    grid = list(itertools.product(ns, ds))
    rows = []
    for (N, d), rng in zip(grid, trial_rngs(seed, len(grid))):
        X = random_vectors(rng, N, d, p)
        g = assemble_graph(X, d, variant).graph
        rows.append({"N": N, "d": d, "dN": d * N, "v": g.num_nodes, "e": g.num_edges})
    return rows


# -- split-plan grids -----------------------------------------------------------

DEFAULT_ALPHAS = (0.5, 1.0, 1.5, 2.0, 3.0)
DEFAULT_DELTAS = (0.25, 0.5, 1.0, 1.5)
DEFAULT_BETAS = (0.5, 1.0, 1.5, 2.0)
DEFAULT_NS = (10**2, 10**3, 10**4, 10**6)

GRID_HEADER = (
    "alpha", "delta", "beta", "n", "status", "case", "eps", "eps_prime",
    "n_tilde", "m_tilde", "n_cap", "m_cap",
    "cond_at", "cond_bt", "cond_c", "cond_d", "a_exp", "b_exp", "margin",
)


def run_split_grid(
    alphas: Iterable[float] = DEFAULT_ALPHAS,
    deltas: Iterable[float] = DEFAULT_DELTAS,
    betas: Iterable[float] = DEFAULT_BETAS,
    ns: Iterable[int] = DEFAULT_NS,
    tol: float = 1e-9,
) -> list[dict]:
    """One row per (alpha, delta, beta, n). Points with delta >= 1 and
    beta >= 1 are reported with status ``hypothesis-violation``."""
    rows = []
    for alpha, delta, beta, n in itertools.product(alphas, deltas, betas, ns):
        row: dict = {"alpha": alpha, "delta": delta, "beta": beta, "n": n}
        try:
            plan = split_plan(alpha, delta, beta, n)
        except HypothesisViolation:
            row["status"] = "hypothesis-violation"
            rows.append(row)
            continue
        rep = verify_plan(plan, n, alpha, delta, beta, tol)
        margin = min(2.0 - rep.cond_a_exp, 2.0 - rep.cond_b_exp)
        row.update(
            status="ok" if rep.ok else "failed",
            case=plan.case_id.value,
            eps=plan.eps,
            eps_prime=plan.eps_prime,
            n_tilde=plan.n_tilde,
            m_tilde=plan.m_tilde,
            n_cap=plan.n_cap,
            m_cap=plan.m_cap,
            cond_at=rep.cond_at_ok,
            cond_bt=rep.cond_bt_ok,
            cond_c=rep.cond_c_ok,
            cond_d=rep.cond_d_ok,
            a_exp=rep.cond_a_exp,
            b_exp=rep.cond_b_exp,
            margin=margin,
        )
        rows.append(row)
    return rows


def write_rows_csv(rows: Iterable[dict], header: Sequence[str], out: io.TextIOBase) -> None:
    writer = csv.DictWriter(out, fieldnames=list(header), lineterminator="\n", restval="")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(v) for k, v in row.items()})


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return v


def plan_lines(plan, report) -> list[str]:
    out = [f"{k}={_fmt(v.value if hasattr(v, 'value') else v)}" for k, v in asdict(plan).items()]
    out += [f"{k}={_fmt(v)}" for k, v in asdict(report).items()]
    return out


def rows_to_csv(rows: Iterable[dict], header: Sequence[str]) -> str:
    buf = io.StringIO()
    write_rows_csv(rows, header, buf)
    return buf.getvalue()


def fit_size_constant(rows: Iterable[dict]) -> float:
    """Smallest c with |V| <= c·d·N over ``rows``."""
    return max(r["v"] / r["dN"] for r in rows)
