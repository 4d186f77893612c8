"""Serial dictatorship: run the mechanism and score its matchings.

Agents act in the given order; each takes its most preferred item still
available, with ties resolved in favour of the minimum item index.  The
mechanism is deterministic given the instance and the ordering; uniformly
random orderings are drawn from the package's documented generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import AssignmentInstance, Matching, Objective, Ordering, preference_rows
from .rng import SplitMix64


def sd_assign(prefs: tuple[tuple[int, ...], ...], order: tuple[int, ...] | list[int]) -> list[int]:
    """0-indexed core: ``order`` are agents, result[a] is agent a's item."""
    n = len(prefs)
    taken = bytearray(n)
    match = [0] * n
    for a in order:
        for g in prefs[a]:
            if not taken[g]:
                taken[g] = 1
                match[a] = g
                break
    return match


def serial_dictatorship(instance: AssignmentInstance, ordering: Ordering) -> Matching:
    """Run serial dictatorship for ``ordering``; returns a perfect matching."""
    if ordering.n != instance.n or not ordering.is_permutation():
        raise ValueError(f"ordering must be a permutation of 1..{instance.n}")
    prefs = preference_rows(instance)
    match = sd_assign(prefs, [a - 1 for a in ordering.seq])
    return Matching(tuple(g + 1 for g in match))


def evaluate(instance: AssignmentInstance, matching: Matching, objective: Objective) -> Fraction:
    """Exact social welfare or social cost of ``matching``."""
    objective.require_compatible(instance)
    if matching.n != instance.n or not matching.is_perfect():
        raise ValueError("matching must be a perfect matching on 1..n")
    matrix = instance.payoff_matrix()
    return sum(
        (matrix[i][matching.assign[i] - 1] for i in range(instance.n)),
        start=Fraction(0),
    )


@dataclass(frozen=True)
class SdRun:
    """One serial-dictatorship execution with its exact objective value."""

    ordering: Ordering
    matching: Matching
    objective_value: Fraction


def sd_run(instance: AssignmentInstance, ordering: Ordering, objective: Objective) -> SdRun:
    matching = serial_dictatorship(instance, ordering)
    return SdRun(ordering=ordering, matching=matching, objective_value=evaluate(instance, matching, objective))


def random_ordering(rng: SplitMix64, n: int) -> Ordering:
    """Uniform agent ordering drawn from ``rng`` (n - 1 bounded draws)."""
    return Ordering(tuple(a + 1 for a in rng.permutation(n)))
