#!/usr/bin/env python3
"""How many samples buy a (1 +- eps) answer with confidence 1 - delta?

Each estimator comes with a closed-form sample budget.  Welfare needs only
about n/eps^2 samples (the value of a run is squeezed between 0 and OPT, so
its variance is small); cost needs n^3/eps^2 per run plus a logarithmic
number of median-of-means runs.  This demo prints the planning table, the
window in which the plain welfare estimator provably fails, and an exact
binomial cross-check showing the plans actually deliver.
"""

import math
from fractions import Fraction

from rsdlab import (
    Inequality,
    Method,
    binomial_failure_probability,
    bound_value,
    sample_size,
    welfare_lower_bound_window,
)


def main():
    print("sample-size plans at eps = 0.5, delta = 0.1")
    print(f"{'method':<24}{'n':>4}{'k':>10}{'runs':>6}")
    for n in (4, 8, 12):
        for method in Method:
            plan = sample_size(method, n, "0.5", "0.1")
            runs = plan.runs if plan.runs is not None else "-"
            print(f"{method.value:<24}{n:>4}{plan.k:>10}{runs!s:>6}")
    print()

    print("the exact failure probability the Bernstein welfare plan guarantees:")
    for n in (4, 8, 12):
        plan = sample_size(Method.WELFARE_BERNSTEIN, n, "0.5", "0.1")
        exact = binomial_failure_probability(n, plan.k, "0.5")
        print(f"  n={n:>2}: k={plan.k:>4}  exact failure on the hardest instance = "
              f"{float(exact):.6f} <= 0.1")
    print()

    print("below-the-window anti-guarantee (needs delta < e^-27):")
    window = welfare_lower_bound_window(10, "0.5", math.exp(-30))
    print(f"  n=10, eps=0.5, delta=e^-30: any k in [{window.k_lo}, {window.k_hi:.1f}) fails; "
          f"applicable = {window.applicable}")
    window = welfare_lower_bound_window(10, "0.5", "0.1")
    print(f"  same with delta=0.1: applicable = {window.applicable} ({window.reason})")
    print()

    print("the inequality values behind the budgets:")
    bernstein = bound_value(Inequality.BERNSTEIN, t=3.0, alpha=1.0, total_variance=0.0)
    print(f"  Bernstein tail at t=3, alpha=1, no variance: {bernstein.value:.6f} = 2e^-4.5")
    cantelli = bound_value(Inequality.CHEBYSHEV_CANTELLI, t=math.sqrt(3))
    print(f"  one-sided Chebyshev at t=sqrt(3): {cantelli.value:.4f} (the 1/4 single-run bound)")
    bd = bound_value(Inequality.BHATIA_DAVIS, low=0.0, high=1.0, mean=0.1)
    print(f"  variance cap for a [0,1] variable with mean 0.1: {bd.value:.4f}")
    chernoff = bound_value(Inequality.CHERNOFF, eta=1.0, mu=6.0)
    print(f"  Chernoff doubling bound at mu=6: {chernoff.value:.6f} = (e/4)^6")
    vacuous = bound_value(Inequality.CHEBYSHEV, t=1.0, variance=4.0)
    print(f"  Chebyshev with variance 4 at t=1: {vacuous.value} (vacuous = {vacuous.vacuous})")
    print()

    print("pre-ceiling Hoeffding/Bernstein budget ratio is exactly 3n/16:")
    for n in (4, 8, 16):
        hoeffding = sample_size(Method.WELFARE_HOEFFDING, n, "0.5", "0.1")
        bernstein = sample_size(Method.WELFARE_BERNSTEIN, n, "0.5", "0.1")
        ratio = hoeffding.k_raw / bernstein.k_raw
        assert ratio == Fraction(3 * n, 16)
        print(f"  n={n:>2}: ratio = {ratio}")


if __name__ == "__main__":
    main()
