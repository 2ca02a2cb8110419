import itertools
import math

import numpy as np
import pytest

from pcfgmm.analysis import beauzamy_bound, bombieri_norm
from pcfgmm.mixture import Mixture, center, mixture_variance
from pcfgmm.moments import Kind, MomentVector, exact_moments, power_sums_from_moments
from pcfgmm.newton_poly import elementary_from_power_sums, vieta_coeffs

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_elementary(roots, n):
    """e_n as a literal sum over all n-subsets."""
    return math.fsum(math.prod(c) for c in itertools.combinations(roots, n))


def gauss_moment(mu, m, nodes=40):
    """E[(mu + Z)^m] by Gauss-HermiteE quadrature (exact for polynomials)."""
    x, w = np.polynomial.hermite_e.hermegauss(nodes)
    return float(np.sum(w * (mu + x) ** m) / math.sqrt(2 * math.pi))


def random_separated_roots(rng, k, lo, hi, min_gap):
    while True:
        r = np.sort(rng.uniform(lo, hi, k))
        if k == 1 or np.min(np.diff(r)) >= min_gap:
            return r


def propagated_error_oracle(deltas, k):
    """Power-sum error written out term by term with its own coefficients."""
    out = []
    d = [0.0, *deltas]
    for m in range(1, len(deltas) + 1):
        terms = [k * d[m]]
        for i in range(1, m // 2 + 1):
            c = math.comb(m, 2 * i) * math.prod(range(1, 2 * i, 2))
            terms.append(k * (-1) ** i * c * d[m - 2 * i])
        out.append(math.fsum(terms))
    return out


def beauzamy_violations(rng, trials):
    """Perturb random real-rooted polynomials inside the smallness condition
    and count roots of P with no root of P + dP within the bound."""
    violations = 0
    for _ in range(trials):
        k = int(rng.integers(2, 9))
        roots = random_separated_roots(rng, k, -2, 2, 0.2)
        p = vieta_coeffs(roots)
        d = rng.normal(size=k + 1)
        d /= bombieri_norm(d)
        dp = np.polyder(p)
        limit = min(abs(np.polyval(dp, x)) / (k * (1 + x * x) ** ((k - 1) / 2)) for x in roots)
        eps = rng.uniform(0, 1) * limit
        moved = np.roots(p + eps * d)
        for x in roots:
            bound, ok = beauzamy_bound(p, x, eps)
            assert ok
            violations += np.min(np.abs(moved - x)) > bound
    return violations


def coefficient_error_ratio(rng, trials):
    """Largest |e_hat - e| / (eps k (2 sigma)^m e^{0.5 (m/sigma)^2}) under
    moment noise bounded by eps sigma^m on centered mixtures."""
    worst = 0.0
    for _ in range(trials):
        k = int(rng.integers(2, 9))
        mus, _ = center(rng.uniform(-2, 2, k))
        mix = Mixture(tuple(mus))
        sigma = math.sqrt(mixture_variance(mix))
        eps = 10 ** rng.uniform(-8, -3)
        M = exact_moments(mix, 2 * k)
        noisy = MomentVector(
            tuple(v + eps * sigma**m * rng.uniform(-1, 1) for m, v in enumerate(M.values, 1)), Kind.EMPIRICAL
        )
        e = elementary_from_power_sums(power_sums_from_moments(M, k), k).e
        e_hat = elementary_from_power_sums(power_sums_from_moments(noisy, k), k).e
        for m, (a, b) in enumerate(zip(e_hat, e), 1):
            worst = max(worst, abs(a - b) / (eps * k * (2 * sigma) ** m * math.exp(0.5 * (m / sigma) ** 2)))
    return worst


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
