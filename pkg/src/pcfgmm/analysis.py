"""Perturbation bounds and sample-complexity formulas.

All formulas take sigma to be the standard deviation of the whole mixture,
not of a component (see ``mixture_variance``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .constants import SAMPLE_COUNT_MAX
from .mixture import Mixture, mixture_variance, pcf
from .newton_poly import ParamPolynomial
from .numeric import horner_compensated


def bombieri_norm(coeffs: Sequence[complex], degree: int | None = None) -> float:
    """sqrt(sum |a_i|^2 / C(k, i)) over the coefficients of a degree-k space.

    Coefficients are descending; a short vector is padded with leading zeros
    up to ``degree``. Magnitudes are rescaled first so tiny or huge entries do
    not underflow or overflow when squared.
    """
    a = np.abs(np.asarray(coeffs, dtype=np.complex128))
    k = a.size - 1 if degree is None else degree
    if a.size > k + 1:
        raise ValueError(f"{a.size} coefficients do not fit in degree {k}")
    a = np.concatenate([np.zeros(k + 1 - a.size), a])
    top = float(a.max())
    if top == 0:
        return 0.0
    weights = np.array([math.comb(k, i) for i in range(k + 1)], dtype=np.float64)
    return top * math.sqrt(math.fsum(((a / top) ** 2 / weights).tolist()))


def _as_coeffs(p) -> np.ndarray:
    return p.coeffs if isinstance(p, ParamPolynomial) else np.asarray(p, dtype=np.float64)


def beauzamy_bound(p_exact, x: float, eps_bombieri: float) -> tuple[float, bool]:
    """Root displacement bound k (1 + x^2)^(k/2) eps / |P'(x)|.

    ``p_exact`` is a ParamPolynomial or descending real coefficients; ``x``
    must be a root of it. The flag reports whether eps is below
    |P'(x)| / (k (1 + x^2)^((k-1)/2)), the regime where the bound holds with
    the unperturbed derivative.
    """
    a = _as_coeffs(p_exact)
    k = a.size - 1
    scale = horner_compensated(np.abs(a), abs(x))
    if abs(horner_compensated(a, x)) > 1e-9 * scale:
        raise ValueError(f"x={x!r} is not a root of the polynomial")
    dp = abs(horner_compensated(np.polyder(a), x))
    if dp <= 1e-15 * scale:
        raise ValueError("P'(x) = 0 at a multiple root: theorem void")
    bound = k * (1 + x * x) ** (k / 2) * eps_bombieri / dp
    ok = eps_bombieri < dp / (k * (1 + x * x) ** ((k - 1) / 2))
    return bound, ok


def growth_factor(sigma: float, k: int) -> float:
    """(2 sigma)^k exp(0.5 (k / sigma)^2), shared by the per-mean error bounds."""
    return (2 * sigma) ** k * math.exp(0.5 * (k / sigma) ** 2)


def c_sigma_k(sigma: float, k: int) -> float:
    return (k**2 * (1 + k * sigma**2) ** (k / 2) * growth_factor(sigma, k)) ** 2


@dataclass(frozen=True)
class BoundReport:
    theorem1_threshold: float  # largest eps admissible for every mean
    theorem1_error_coeff: float  # worst multiplier of eps over the means
    c_sigma_k: float
    sigma: float
    per_mean: tuple[tuple[float, float, float], ...]  # (pcf, threshold, error_coeff)

    @property
    def thresholds(self) -> list[float]:
        return [t for _, t, _ in self.per_mean]

    @property
    def error_coeffs(self) -> list[float]:
        return [c for _, _, c in self.per_mean]


def theorem1_bounds(mixture: Mixture) -> BoundReport:
    means = mixture.means
    k = mixture.k
    if abs(math.fsum(means)) / k > 1e-9:
        raise ValueError("mixture must be centered (subtract the mean of the means first)")
    report = pcf(mixture)
    if report.min_pcf == 0:
        raise ValueError("duplicate means: pair correlation factor is zero")
    sigma = math.sqrt(mixture_variance(mixture))
    g = k**2 * growth_factor(sigma, k)
    per_mean = []
    for mu, p in zip(means, report.per_mean_pcf):
        threshold = p / (g * (1 + mu * mu) ** ((k - 1) / 2))
        coeff = g * (1 + mu * mu) ** (k / 2) / p
        per_mean.append((p, threshold, coeff))
    return BoundReport(
        theorem1_threshold=min(t for _, t, _ in per_mean),
        theorem1_error_coeff=max(c for _, _, c in per_mean),
        c_sigma_k=c_sigma_k(sigma, k),
        sigma=sigma,
        per_mean=tuple(per_mean),
    )


@dataclass(frozen=True)
class SampleCount:
    """Ceiling of ``exact``; ``saturated`` when it overflows the u64 range."""

    value: int
    exact: float
    saturated: bool

    def __int__(self):
        return self.value


def _count(exact: float) -> SampleCount:
    if not math.isfinite(exact) or exact >= SAMPLE_COUNT_MAX:
        return SampleCount(SAMPLE_COUNT_MAX, exact, True)
    return SampleCount(max(1, math.ceil(exact)), exact, False)


def samples_cor1(eps: float, delta: float, mixture: Mixture) -> SampleCount:
    """ln(1/delta) c(sigma, k) / min_pcf^2 / eps^2, rounded up."""
    if eps <= 0 or not 0 < delta < 1:
        raise ValueError("need eps > 0 and 0 < delta < 1")
    min_pcf = pcf(mixture).min_pcf
    if min_pcf == 0:
        raise ValueError("duplicate means: pair correlation factor is zero")
    sigma = math.sqrt(mixture_variance(mixture))
    with np.errstate(over="ignore"):
        exact = math.log(1 / delta) * c_sigma_k(sigma, mixture.k) / min_pcf**2 / eps**2
    return _count(exact)


def samples_cor2(eps: float, delta: float, k: int, sigma: float) -> SampleCount:
    """Worst-case count 10^4 c(sigma, k) eps^(-2k) ln(1/delta), rounded up."""
    if not 0 < eps < 1 or not 0 < delta < 1:
        raise ValueError("need 0 < eps < 1 and 0 < delta < 1")
    try:
        exact = 1e4 * c_sigma_k(sigma, k) * eps ** (-2 * k) * math.log(1 / delta)
    except OverflowError:
        exact = math.inf
    return _count(exact)


def wilkinson_coeffs(degree: int = 20) -> list[int]:
    """Exact integer coefficients of (x-1)(x-2)...(x-degree), descending."""
    c = [1]
    for r in range(1, degree + 1):
        c = [a - r * b for a, b in zip(c + [0], [0] + c)]
    return c


def wilkinson_demo(perturbation: float = 2.0**-23, dps: int = 60) -> tuple[float, float]:
    """Largest real root of the degree-20 Wilkinson polynomial, before and
    after lowering the x^19 coefficient by ``perturbation``.

    Runs in mpmath at ``dps`` decimal digits: 20! does not fit a double and
    the perturbation would be lost next to it.
    """
    with mpmath.workdps(dps):
        base = [mpmath.mpf(c) for c in wilkinson_coeffs()]
        before = _largest_real_root(base)
        bumped = list(base)
        bumped[1] -= mpmath.mpf(perturbation)
        after = _largest_real_root(bumped)
    return before, after


def wilkinson_roots(perturbation: float = 0.0, dps: int = 60) -> list[complex]:
    with mpmath.workdps(dps):
        c = [mpmath.mpf(v) for v in wilkinson_coeffs()]
        c[1] -= mpmath.mpf(perturbation)
        roots = mpmath.polyroots(c, maxsteps=400, extraprec=4 * dps)
        return [complex(r) for r in roots]


def _largest_real_root(coeffs) -> float:
    roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=240)
    real = [mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** -20]
    return float(max(real))
