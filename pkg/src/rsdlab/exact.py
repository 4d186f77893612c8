"""Exact evaluation of random serial dictatorship by full enumeration.

Computing the assignment lottery (or the expected objective value) of RSD
is #P-hard in general, so exactness here comes from brute force: iterate
every one of the n! agent orderings, run serial dictatorship on each, and
accumulate counts and moments in exact integer/rational arithmetic.  The
enumeration is the reference oracle that every estimator and every encoded
instance in this package is checked against, which is why it refuses to run
past a configurable cap instead of silently grinding through factorials.

Orderings are generated in lexicographic order and the accumulator is
associative, so the work could be split by first-dictator branch and merged
without changing any result; no floating point enters this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .core import AssignmentInstance, Objective, as_fraction, preference_rows
from .sd import sd_assign

DEFAULT_ORACLE_CAP = 10


@dataclass(frozen=True)
class ExactSummary:
    """Full-enumeration summary of RSD on one instance.

    ``counts[i-1][g-1]`` is the number of orderings under which agent ``i``
    receives item ``g``; every row and every column sums to ``n!``.
    ``lottery`` is the same matrix divided by ``n!`` (doubly stochastic).
    Moments are exact rationals over the uniform ordering distribution and
    are ``None`` when no objective was requested.
    """

    n: int
    objective: Objective | None
    order_count: int
    counts: tuple[tuple[int, ...], ...]
    lottery: tuple[tuple[Fraction, ...], ...]
    mean: Fraction | None
    second_moment: Fraction | None
    variance: Fraction | None


def _scaled_int_matrix(instance: AssignmentInstance) -> tuple[list[list[int]], int]:
    """Payoff matrix as integers over one common denominator."""
    matrix = instance.payoff_matrix()
    denom = 1
    for row in matrix:
        for x in row:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
    scaled = [[int(x * denom) for x in row] for row in matrix]
    return scaled, denom


def check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(
            f"exact enumeration over {n}! orderings refused: n={n} exceeds the cap of {cap} "
            f"(raise the cap explicitly to accept the factorial cost)"
        )


def enumerate_rsd(
    instance: AssignmentInstance,
    objective: Objective | None = None,
    cap: int = DEFAULT_ORACLE_CAP,
) -> ExactSummary:
    """Enumerate all n! orderings and summarize RSD exactly.

    With ``objective=None`` only the count matrix and lottery are computed,
    which also covers abstract instances.
    """
    n = instance.n
    check_cap(n, cap)
    if objective is not None:
        objective.require_compatible(instance)

    prefs = preference_rows(instance)
    counts = [[0] * n for _ in range(n)]

    if objective is None:
        for order in permutations(range(n)):
            match = sd_assign(prefs, order)
            for a in range(n):
                counts[a][match[a]] += 1
        total = total_sq = None
        denom = 1
    else:
        scaled, denom = _scaled_int_matrix(instance)
        total = 0
        total_sq = 0
        for order in permutations(range(n)):
            match = sd_assign(prefs, order)
            s = 0
            for a in range(n):
                g = match[a]
                counts[a][g] += 1
                s += scaled[a][g]
            total += s
            total_sq += s * s

    fact = math.factorial(n)
    lottery = tuple(tuple(Fraction(c, fact) for c in row) for row in counts)
    if objective is None:
        mean = second = variance = None
    else:
        mean = Fraction(total, fact * denom)
        second = Fraction(total_sq, fact * denom * denom)
        variance = second - mean * mean
    return ExactSummary(
        n=n,
        objective=objective,
        order_count=fact,
        counts=tuple(tuple(row) for row in counts),
        lottery=lottery,
        mean=mean,
        second_moment=second,
        variance=variance,
    )


def counts_by_rank(summary: ExactSummary, instance: AssignmentInstance) -> tuple[tuple[int, ...], ...]:
    """Re-index the agent-by-item count matrix by preference rank.

    Entry ``[i-1][j-1]`` counts the orderings under which agent ``i``
    receives its rank-``j`` item.
    """
    prefs = preference_rows(instance)
    return tuple(
        tuple(summary.counts[a][prefs[a][j]] for j in range(instance.n))
        for a in range(instance.n)
    )


def _binomial_numerators(n: int, k: int):
    """Yield (x, N_x) with N_x = C(k, x) * (n-1)**(k-x), so that
    Pr[X = x] = N_x / n**k for X ~ Binomial(k, 1/n)."""
    num = (n - 1) ** k
    yield 0, num
    for x in range(1, k + 1):
        # binomial-coefficient recurrence; the division is exact at every step
        num = num * (k - x + 1) // (x * (n - 1))
        yield x, num


def binomial_failure_probability(n: int, k: int, eps) -> Fraction:
    """Exact Pr[|X/k - 1/n| >= eps/n] for X ~ Binomial(k, 1/n).

    This is the exact failure probability of the k-sample mean estimator on
    the instance whose objective is 1 precisely when a designated agent
    draws first (probability 1/n) and 0 otherwise; failure uses ``>=``
    because the approximation target is the strict inequality
    ``|Q - mean| < eps * mean``.
    """
    if n < 2:
        raise ValueError("n must be at least 2 (a single agent leaves nothing random)")
    if k < 1:
        raise ValueError("k must be at least 1")
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")

    # |x/k - 1/n| >= eps/n  <=>  |x*n - k| >= eps*k
    threshold = eps * k
    failure_num = 0
    for x, num in _binomial_numerators(n, k):
        if abs(x * n - k) >= threshold:
            failure_num += num
    return Fraction(failure_num, n**k)


def binomial_upper_tail(n: int, k: int, x_min: int) -> Fraction:
    """Exact Pr[X >= x_min] for X ~ Binomial(k, 1/n)."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    tail_num = 0
    for x, num in _binomial_numerators(n, k):
        if x >= x_min:
            tail_num += num
    return Fraction(tail_num, n**k)


@dataclass(frozen=True)
class AntiConcentrationCell:
    """One (n, k, eps) cell of the anti-concentration check.

    ``exact_tail`` is the exact binomial probability of overshooting the
    mean by a (1 + eps) factor; ``floor_bound`` is exp(-9 eps^2 k / n), the
    closed-form lower bound it must dominate.  Cells whose hypotheses
    (eps <= 1/2, 1/n <= 1/2, eps^2 k / n >= 3) fail are flagged and not
    evaluated.
    """

    n: int
    k: int
    eps: Fraction
    applicable: bool
    reason: str | None
    exact_tail: Fraction | None
    floor_bound: float | None
    holds: bool | None


def verify_reverse_chernoff_grid(cells) -> list[AntiConcentrationCell]:
    """Exact check that the binomial upper tail dominates its lower bound.

    For each applicable cell, computes Pr[X/k >= (1+eps)/n] exactly for
    X ~ Binomial(k, 1/n) and compares it against exp(-9 eps^2 k / n).
    """
    out = []
    for n, k, eps in cells:
        eps = as_fraction(eps)
        reason = None
        if not 0 < eps <= Fraction(1, 2):
            reason = f"hypothesis unmet: eps={eps} outside (0, 1/2]"
        elif n < 2:
            reason = f"hypothesis unmet: success probability 1/{n} exceeds 1/2"
        elif eps * eps * k < 3 * n:
            reason = f"hypothesis unmet: eps^2*k/n = {float(eps * eps * k / n):.4g} < 3"
        if reason is not None:
            out.append(AntiConcentrationCell(n, k, eps, False, reason, None, None, None))
            continue
        # X/k >= (1+eps)/n  <=>  x >= k(1+eps)/n
        x_min = math.ceil(Fraction(k, n) * (1 + eps))
        tail = binomial_upper_tail(n, k, x_min)
        bound = math.exp(-9 * float(eps) ** 2 * k / n)
        out.append(AntiConcentrationCell(
            n, k, eps, True, None, tail, bound, tail >= Fraction(bound),
        ))
    return out
