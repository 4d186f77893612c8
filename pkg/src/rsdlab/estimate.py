"""Sampling estimators for the expected objective value of RSD.

Two estimators are provided:

* :func:`estimate_mean` draws ``k`` agent orderings independently and
  uniformly with replacement, runs serial dictatorship on each, and returns
  the mean objective value.
* :func:`estimate_median_of_means` repeats that whole procedure ``runs``
  times and returns the median of the per-run means (for an even number of
  runs, the mean of the two middle order statistics), trading samples for
  exponentially better confidence on heavy-tailed cost instances.

Reproducibility contract: sample ``i`` of run ``j`` uses the dedicated
substream ``(seed, j, i)``, and per-run sums are accumulated exactly (as
integers scaled by 2**1074, under which IEEE doubles are integers) before a
single correctly-rounded conversion back to float.  Both choices make the
report bit-for-bit identical however the samples are partitioned among
workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import fsum

from .core import AssignmentInstance, Objective, as_fraction, preference_rows
from .rng import substream
from .sd import sd_assign

# Memoize per-permutation objective values only while the permutation space
# is small enough that the cache can actually be hit.
_MEMO_MAX_N = 8

# IEEE double scale: every finite double is an integer multiple of 2**-1074.
_EXACT_SCALE = 1074


class ExactFloatSum:
    """Exact, order-independent accumulator for IEEE doubles.

    Each double is the integer ``numerator << (1074 - log2 denominator)``
    in units of 2**-1074, so sums and merges are plain integer additions
    and the final mean is rounded exactly once.
    """

    __slots__ = ("_acc",)

    def __init__(self):
        self._acc = 0

    def add(self, x: float) -> None:
        num, den = x.as_integer_ratio()
        self._acc += num << (_EXACT_SCALE - (den.bit_length() - 1))

    def merge(self, other: "ExactFloatSum") -> None:
        self._acc += other._acc

    def mean(self, count: int) -> float:
        return float(Fraction(self._acc, count << _EXACT_SCALE))


@dataclass(frozen=True)
class EstimateReport:
    """Outcome of one estimator invocation.

    ``run_values`` holds the per-run means (a single entry for the plain
    mean estimator); ``estimate`` is their median.  Wall time is excluded
    from equality so reports can be compared for reproducibility.
    """

    estimate: float
    k: int
    runs: int
    objective: Objective
    seed: int
    run_values: tuple[float, ...]
    wall_time: float = field(compare=False, default=0.0)


def _sampling_tables(instance: AssignmentInstance, objective: Objective):
    objective.require_compatible(instance)
    prefs = preference_rows(instance)
    payoff = tuple(tuple(float(x) for x in row) for row in instance.payoff_matrix())
    return prefs, payoff


def _sample_value(prefs, payoff, rng, n: int, memo) -> float:
    perm = tuple(rng.permutation(n))
    if memo is None:
        match = sd_assign(prefs, perm)
        return fsum(payoff[a][match[a]] for a in range(n))
    value = memo.get(perm)
    if value is None:
        match = sd_assign(prefs, perm)
        value = fsum(payoff[a][match[a]] for a in range(n))
        memo[perm] = value
    return value


def _run_slice(prefs, payoff, n, k_start, k_stop, seed, run) -> ExactFloatSum:
    memo: dict | None = {} if n <= _MEMO_MAX_N else None
    acc = ExactFloatSum()
    for i in range(k_start, k_stop):
        rng = substream(seed, run, i)
        acc.add(_sample_value(prefs, payoff, rng, n, memo))
    return acc


def _slices(k: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, k))
    step = -(-k // workers)
    return [(lo, min(lo + step, k)) for lo in range(0, k, step)]


def _run_mean(prefs, payoff, n, k, seed, run, workers) -> float:
    acc = ExactFloatSum()
    parts = _slices(k, workers)
    if len(parts) == 1:
        acc.merge(_run_slice(prefs, payoff, n, parts[0][0], parts[0][1], seed, run))
    else:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            futures = [
                pool.submit(_run_slice, prefs, payoff, n, lo, hi, seed, run)
                for lo, hi in parts
            ]
            for fut in futures:
                acc.merge(fut.result())
    return acc.mean(k)


def estimate_mean(
    instance: AssignmentInstance,
    objective: Objective,
    k: int,
    seed: int,
    workers: int = 1,
) -> EstimateReport:
    """Mean objective value over ``k`` uniformly random orderings.

    Identical ``(instance, objective, k, seed)`` give an identical report
    for every worker count.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    started = time.perf_counter()
    prefs, payoff = _sampling_tables(instance, objective)
    value = _run_mean(prefs, payoff, instance.n, k, seed, 0, workers)
    return EstimateReport(
        estimate=value,
        k=k,
        runs=1,
        objective=objective,
        seed=seed,
        run_values=(value,),
        wall_time=time.perf_counter() - started,
    )


def median(values) -> float:
    """Median with the even case resolved as the mean of the two middles."""
    ordered = sorted(values)
    if not ordered:
        raise ValueError("median of an empty sequence")
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2


def estimate_median_of_means(
    instance: AssignmentInstance,
    objective: Objective,
    k: int,
    runs: int,
    seed: int,
    workers: int = 1,
) -> EstimateReport:
    """Median of ``runs`` independent k-sample mean estimates.

    Run ``j`` (0-indexed internally) uses substreams ``(seed, j, i)``, so a
    single run reproduces :func:`estimate_mean` with the same seed.
    """
    if k < 1 or runs < 1:
        raise ValueError("k and runs must be at least 1")
    started = time.perf_counter()
    prefs, payoff = _sampling_tables(instance, objective)
    n = instance.n
    if workers > 1 and runs > 1:
        with ThreadPoolExecutor(max_workers=min(workers, runs)) as pool:
            futures = [
                pool.submit(_run_mean, prefs, payoff, n, k, seed, j, 1)
                for j in range(runs)
            ]
            values = tuple(fut.result() for fut in futures)
    else:
        values = tuple(_run_mean(prefs, payoff, n, k, seed, j, workers) for j in range(runs))
    return EstimateReport(
        estimate=median(values),
        k=k,
        runs=runs,
        objective=objective,
        seed=seed,
        run_values=values,
        wall_time=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class ApproxVerdict:
    """Strict relative-accuracy check of an estimate against a reference.

    ``holds`` is true iff ``|estimate - target| < eps * target`` (with the
    degenerate rule that a zero target is approximated only by an exactly
    zero estimate).  ``side`` records which strict bound failed.
    """

    target: Fraction
    eps: Fraction
    holds: bool
    side: str  # "within" | "over-fail" | "under-fail"


def check_approx(estimate, target, eps) -> ApproxVerdict:
    """Exact strict check that ``estimate`` is within a (1 +- eps) factor."""
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    target = as_fraction(target)
    if target < 0:
        raise ValueError("target must be non-negative")
    est = as_fraction(estimate)
    if target == 0:
        holds = est == 0
        return ApproxVerdict(target, eps, holds, "within" if holds else "over-fail")
    diff = est - target
    if abs(diff) < eps * target:
        return ApproxVerdict(target, eps, True, "within")
    return ApproxVerdict(target, eps, False, "over-fail" if diff > 0 else "under-fail")
