"""Orthogonal vectors: brute-force solver, block partitioning, and the choice
of block sizes that turns a fast (N, M)-OV index into a sub-quadratic OV
algorithm.

Given an index with build cost N^alpha and query cost N^delta * M^beta, solving
an n-vs-n OV instance block by block costs

    N^(alpha-1) * n  +  N^(delta-1) * M^(beta-1) * n^2

(up to poly(d) factors). :func:`split_plan` picks real block sizes
``n_tilde``/``m_tilde`` making the two terms exactly n^(2-eps') and n^(2-eps);
:func:`verify_plan` re-checks the resulting exponents in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from .model import BitVector, OvInstance

DEFAULT_TOL = 1e-9


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def solve_ov_bruteforce(inst: OvInstance) -> bool:
    """True iff some (x, y) in X × Y has x·y = 0. Empty X or Y gives False."""
    for x in inst.X:
        if len(x) != inst.d:
            raise ValueError("dimension mismatch in X")
    for y in inst.Y:
        if len(y) != inst.d:
            raise ValueError("dimension mismatch in Y")
    return any(dot(x, y) == 0 for x in inst.X for y in inst.Y)


def orthogonal_pairs(inst: OvInstance) -> list[tuple[int, int]]:
    return [(i, j) for i, x in enumerate(inst.X) for j, y in enumerate(inst.Y) if dot(x, y) == 0]


# -- partitioned solving ------------------------------------------------------

Subsolver = Callable[[Sequence[BitVector], Sequence[BitVector]], bool]


@dataclass(frozen=True)
class PartitionResult:
    answer: bool
    subproblems: int
    x_groups: int
    y_groups: int

    def __bool__(self) -> bool:
        return self.answer


def _chunks(vecs: Sequence[BitVector], size: int) -> list[tuple[BitVector, ...]]:
    return [tuple(vecs[i : i + size]) for i in range(0, len(vecs), size)]


def brute_subsolver(d: int) -> Subsolver:
    def solve(xs: Sequence[BitVector], ys: Sequence[BitVector]) -> bool:
        return solve_ov_bruteforce(OvInstance(tuple(xs), tuple(ys), d))

    return solve


def partition_and_solve(
    inst: OvInstance,
    N: int,
    M: int,
    subsolver: Subsolver | None = None,
    executor=None,
) -> PartitionResult:
    """Split X into groups of <= N and Y into groups of <= M and OR the
    subsolver over every (X_i, Y_j) pair.

    Every pair is evaluated (no short circuit) so the subproblem count is
    always ceil(n/N) * ceil(n/M). ``executor`` may be any
    ``concurrent.futures`` executor; results are combined with OR, so the
    evaluation order does not matter.
    """
    n = inst.N
    if inst.M != n:
        raise ValueError(f"partition_and_solve expects |X| = |Y|, got {inst.N} and {inst.M}")
    if not (1 <= N <= n and 1 <= M <= n):
        raise ValueError(f"need 1 <= N, M <= n = {n}, got N = {N}, M = {M}")
    solve = subsolver or brute_subsolver(inst.d)
    xs = _chunks(inst.X, N)
    ys = _chunks(inst.Y, M)
    pairs = [(xi, yj) for xi in xs for yj in ys]
    if executor is None:
        results = [solve(xi, yj) for xi, yj in pairs]
    else:
        results = list(executor.map(lambda pair: solve(*pair), pairs))
    return PartitionResult(any(results), len(pairs), len(xs), len(ys))


# -- block-size plans -----------------------------------------------------------


class SplitCase(str, Enum):
    C1_1_1 = "C1_1_1"
    C1_1_2 = "C1_1_2"
    C1_2 = "C1_2"
    C1_3 = "C1_3"
    C2_1 = "C2_1"
    C2_2 = "C2_2"


class HypothesisViolation(ValueError):
    """Raised when neither delta < 1 nor beta < 1."""


@dataclass(frozen=True)
class SplitPlan:
    case_id: SplitCase
    eps: float
    eps_prime: float
    n_tilde: float
    m_tilde: float
    n_cap: int
    m_cap: int

    def __post_init__(self) -> None:
        if not (self.eps > 0 and self.eps_prime > 0):
            raise ValueError("eps and eps_prime must be positive")


@dataclass(frozen=True)
class PlanReport:
    cond_a_exp: float
    cond_b_exp: float
    cond_at_ok: bool
    cond_bt_ok: bool
    cond_c_ok: bool
    cond_d_ok: bool
    tol: float

    @property
    def ok(self) -> bool:
        return (
            self.cond_at_ok
            and self.cond_bt_ok
            and self.cond_c_ok
            and self.cond_d_ok
            and self.cond_a_exp < 2
            and self.cond_b_exp < 2
        )


def _ceil(x: float) -> int:
    # n ** e can land a few ulps above an integer (10**6 ** 0.5 == 1000.0000000001
    # is possible); snap before taking the ceiling.
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


def _index_exponent(alpha: float, delta: float, beta: float) -> float:
    """g = (1 - eps') / (alpha - 1), the exponent with n_tilde = n^g."""
    g = min(1.0, 1.0 / abs(alpha - 1.0))
    if beta < 1 and delta > 1:
        g = min(g, (1.0 - beta) / (delta - 1.0))
    return g / 2.0


def classify(alpha: float, delta: float, beta: float) -> SplitCase:
    if alpha <= 0 or delta <= 0:
        raise ValueError("alpha and delta must be positive")
    if delta >= 1 and beta >= 1:
        raise HypothesisViolation(f"need delta < 1 or beta < 1, got delta = {delta}, beta = {beta}")
    if alpha == 1:
        return SplitCase.C2_1 if delta < 1 else SplitCase.C2_2
    if delta == 1:
        return SplitCase.C1_3
    if beta < 1:
        return SplitCase.C1_1_1
    if beta > 1:
        return SplitCase.C1_1_2
    return SplitCase.C1_2


def split_plan(alpha: float, delta: float, beta: float, n: int) -> SplitPlan:
    """Choose (eps, eps', n_tilde, m_tilde) for block sizes on an n-vs-n instance.

    Within each case eps is the midpoint of its admissible interval, except
    when beta > 1, where eps sits at the closed upper end. For
    alpha != 1 the index exponent is g = min(1, 1/|alpha-1|)/2 (further capped
    by (1-beta)/(delta-1) when delta > 1 > beta), and eps' = 1 - g(alpha-1).
    """
    case = classify(alpha, delta, beta)
    if n < 1:
        raise ValueError("n must be >= 1")

    if case is SplitCase.C2_1:
        eps_p = 1.0
        eps = (1.0 - delta) / 2.0
        n_t, m_t = n ** (eps / (1.0 - delta)), 1.0
    elif case is SplitCase.C2_2:
        eps_p = 1.0
        eps = (1.0 - beta) / 2.0
        n_t, m_t = 1.0, n ** (eps / (1.0 - beta))
    else:
        g = _index_exponent(alpha, delta, beta)
        eps_p = 1.0 - g * (alpha - 1.0)
        n_t = n ** g
        if case is SplitCase.C1_1_1:
            lo, hi = max(0.0, g * (1.0 - delta)), 1.0 - beta + g * (1.0 - delta)
            eps = (lo + hi) / 2.0
            m_t = n ** ((eps - g * (1.0 - delta)) / (1.0 - beta))
        elif case is SplitCase.C1_1_2:
            # Upper end of [max(0, 1-beta+g(1-delta)), g(1-delta)]: m_tilde = 1,
            # so rounding M up cannot inflate the M^(beta-1) factor.
            eps = g * (1.0 - delta)
            m_t = n ** ((g * (1.0 - delta) - eps) / (beta - 1.0))
        elif case is SplitCase.C1_2:
            eps = g * (1.0 - delta)
            m_t = 1.0
        else:  # C1_3
            eps = (1.0 - beta) / 2.0
            m_t = n ** (eps / (1.0 - beta))

    return SplitPlan(case, eps, eps_p, n_t, m_t, _ceil(n_t), _ceil(m_t))


def _close(lhs: float, rhs: float, tol: float) -> bool:
    return abs(lhs - rhs) <= tol * max(1.0, abs(lhs), abs(rhs))


def verify_plan(
    plan: SplitPlan,
    n: int,
    alpha: float,
    delta: float,
    beta: float,
    tol: float = DEFAULT_TOL,
) -> PlanReport:
    """Re-check every block-size condition of ``plan`` independently.

    The two real-valued identities are compared in natural-log space with
    relative tolerance ``tol``; the ceiling and range conditions are exact.
    The achieved exponents use the integer block sizes.
    """
    if n < 2:
        raise ValueError("n must be >= 2 for log-base-n exponents")
    ln_n = math.log(n)
    ln_nt = math.log(plan.n_tilde)
    ln_mt = math.log(plan.m_tilde)

    at_ok = _close((alpha - 1.0) * ln_nt + ln_n, (2.0 - plan.eps_prime) * ln_n, tol)
    bt_ok = _close(
        (delta - 1.0) * ln_nt + (beta - 1.0) * ln_mt + 2.0 * ln_n,
        (2.0 - plan.eps) * ln_n,
        tol,
    )
    c_ok = plan.n_cap == _ceil(plan.n_tilde) and plan.m_cap == _ceil(plan.m_tilde)
    # Plans are built from floating-point powers of n, so the upper range
    # check allows the same relative slack as the log-space identities.
    upper = n * (1.0 + tol)
    d_ok = 1.0 <= plan.n_tilde <= upper and 1.0 <= plan.m_tilde <= upper

    a_exp = ((alpha - 1.0) * math.log(plan.n_cap) + ln_n) / ln_n
    b_exp = ((delta - 1.0) * math.log(plan.n_cap) + (beta - 1.0) * math.log(plan.m_cap) + 2.0 * ln_n) / ln_n
    return PlanReport(a_exp, b_exp, at_ok, bt_ok, c_ok, d_ok, tol)


def ceil_power_bound_check(a: float, b: float, n_values: Iterable[int], C: float) -> bool:
    """Check ceil(n^a)^b <= C * n^(a*b) for every sampled n."""
    for n in n_values:
        if n < 2:
            raise ValueError("n_values must be >= 2")
        if b == 0:
            continue
        lhs = math.exp(b * math.log(_ceil(n**a)))
        if lhs > C * math.exp(a * b * math.log(n)) * (1.0 + 1e-9):
            return False
    return True
