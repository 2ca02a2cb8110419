"""Ground-truth uniform spherical mixtures and their geometric quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .constants import K_MAX


@dataclass(frozen=True)
class Mixture:
    """Equal-weight mixture of unit-variance Gaussians on the real line.

    The constructor sorts ``means`` ascending. Duplicate means are allowed
    here; operations that need distinct means reject them.
    """

    means: tuple[float, ...]

    def __post_init__(self):
        means = tuple(sorted(float(m) for m in self.means))
        if not 2 <= len(means) <= K_MAX:
            raise ValueError(f"number of components must be in [2, {K_MAX}], got {len(means)}")
        if not all(math.isfinite(m) for m in means):
            raise ValueError("means must be finite")
        object.__setattr__(self, "means", means)

    @property
    def k(self) -> int:
        return len(self.means)

    @property
    def weight(self) -> float:
        return 1.0 / self.k

    @property
    def component_variance(self) -> float:
        return 1.0

    def shifted(self, c: float) -> "Mixture":
        return Mixture(tuple(m + c for m in self.means))


@dataclass(frozen=True)
class PcfReport:
    per_mean_pcf: tuple[float, ...]
    min_pcf: float
    min_gap: float


def pcf_values(means: Sequence[float]) -> list[float]:
    """Product of distances from each mean to every other mean."""
    out = []
    for m, mu in enumerate(means):
        prod = 1.0
        for n, nu in enumerate(means):
            if n != m:
                prod *= abs(mu - nu)
        out.append(prod)
    return out


def pcf(mixture: Mixture) -> PcfReport:
    means = mixture.means
    values = pcf_values(means)
    min_gap = min(b - a for a, b in zip(means, means[1:]))
    return PcfReport(tuple(values), min(values), min_gap)


def variance_aware_pcf(means: Sequence[float], variances: Sequence[float]) -> list[float]:
    """PCF where each factor is max(|mean gap|, sqrt(|variance gap|)).

    In one dimension the spectral norm of a covariance difference is just the
    absolute difference of the variances.
    """
    if len(means) != len(variances):
        raise ValueError(f"means and variances differ in length ({len(means)} vs {len(variances)})")
    if len(means) < 2:
        raise ValueError("need at least two components")
    if any(v < 0 for v in variances):
        raise ValueError("variances must be nonnegative")
    out = []
    for m in range(len(means)):
        prod = 1.0
        for j in range(len(means)):
            if j != m:
                prod *= max(abs(means[m] - means[j]), math.sqrt(abs(variances[m] - variances[j])))
        out.append(prod)
    return out


def mixture_variance(mixture: Mixture) -> float:
    # Law of total variance with unit component variances.
    k = mixture.k
    mean = math.fsum(mixture.means) / k
    spread = math.fsum((mu - mean) ** 2 for mu in mixture.means) / k
    return 1.0 + spread


def center(means: Sequence[float]) -> tuple[list[float], float]:
    if len(means) == 0:
        raise ValueError("cannot center an empty list")
    shift = math.fsum(means) / len(means)
    return [m - shift for m in means], shift
