"""Measure the slack constants behind the operational bounds.

Prints the measured constant for the power-sum and coefficient error forms,
median-of-means miss rates at kappa = 1, Beauzamy violations of the
unperturbed-derivative form near the smallness limit, and how often the
noiseless pipeline misses 1e-7 on random 500-mixture suites.
"""

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import beauzamy_violations, coefficient_error_ratio  # noqa: E402
from pcfgmm.analysis import beauzamy_bound, bombieri_norm  # noqa: E402
from pcfgmm.experiments import run_pipeline  # noqa: E402
from pcfgmm.mixture import Mixture, center, mixture_variance  # noqa: E402
from pcfgmm.moments import empirical_moments, exact_moments, power_sum_errors  # noqa: E402
from pcfgmm.sampling import sample  # noqa: E402


def power_sum_constant(rng, trials=2000):
    worst = 0.0
    for _ in range(trials):
        k = int(rng.integers(2, 9))
        mix = Mixture(tuple(center(rng.uniform(-2, 2, k))[0]))
        sigma = math.sqrt(mixture_variance(mix))
        eps = 1e-4
        d = [eps * sigma**m * rng.uniform(-1, 1) for m in range(1, 2 * k + 1)]
        for m, e in enumerate(power_sum_errors(d, k), 1):
            worst = max(worst, abs(e) / (eps * k * sigma**m * math.exp(0.5 * (m / sigma) ** 2)))
    return worst


def kappa_one_miss_rates(batteries=50):
    mix = Mixture((-1, 1))
    sigma = math.sqrt(mixture_variance(mix))
    delta, eps = 0.05, 0.1
    n = math.ceil(math.log(1 / delta) / eps**2)
    rates = []
    for order in (1, 2, 3, 4):
        M = exact_moments(mix, order).values[order - 1]
        miss = 0
        for seed in range(batteries):
            est = empirical_moments(sample(mix, n, seed=500 + seed), order, delta).values[order - 1]
            miss += abs(est - M) > eps * sigma**order
        rates.append(miss / batteries)
    return n, rates


def beauzamy_edge(rng, trials=2000):
    """k = 2, eps pushed to 90-99% of the smallness limit."""
    bad = 0
    for _ in range(trials):
        a = rng.uniform(0.1, 2)
        p = np.array([1.0, 0.0, -a * a])
        d = rng.normal(size=3)
        d /= bombieri_norm(d)
        eps = rng.uniform(0.9, 0.99) * abs(2 * a) / (2 * math.sqrt(1 + a * a))
        moved = np.roots(p + eps * d)
        for x in (-a, a):
            bad += np.min(np.abs(moved - x)) > beauzamy_bound(p, x, eps)[0]
    return bad


def noiseless_suite_failures(seed):
    rng = np.random.default_rng(seed)
    fails = 0
    for _ in range(500):
        k = int(rng.integers(2, 9))
        r = run_pipeline(Mixture(tuple(rng.uniform(-2, 2, k))), None, 0.05, 0)
        fails += not r.max_error <= 1e-7
    return fails


def main():
    rng = np.random.default_rng(0)
    print(f"power-sum error constant: {power_sum_constant(rng):.4f}")
    print(f"coefficient error constant: {coefficient_error_ratio(rng, 2000):.4f}")
    n, rates = kappa_one_miss_rates()
    print(f"median-of-means at kappa=1 (n={n}): miss rates by order {rates}")
    print(f"Beauzamy random coverage violations (200 pairs): {beauzamy_violations(rng, 200)}")
    print(f"Beauzamy edge violations, k=2 (2000 pairs): {beauzamy_edge(rng)}")
    sweep = {s: noiseless_suite_failures(s) for s in range(2000, 2020)}
    print(f"noiseless 500-mixture suites with a miss above 1e-7: {sum(v > 0 for v in sweep.values())} of 20 {sweep}")


if __name__ == "__main__":
    main()
