"""Exact and empirical mixture moments and their inversion to power sums.

With unit component variances the raw moments of the mixture and the power
sums of the means are related by a triangular linear map whose entries are
the Gaussian moment coefficients ``C(m, 2j) * (2j - 1)!!``. The forward map
gives exact moments; the alternating-sign inverse recovers power sums from
(possibly empirical) moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .constants import K_MAX, MOM_GROUP_FACTOR
from .mixture import Mixture
from .numeric import compensated_sum
from .sampling import SampleSet


class Kind(str, Enum):
    EXACT = "exact"
    EMPIRICAL = "empirical"


def double_factorial(n: int) -> int:
    # (-1)!! = 1
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@dataclass(frozen=True)
class HermiteCoeffTable:
    max_order: int
    c: tuple[tuple[int, ...], ...]  # c[m - 1][j] for 1 <= m <= max_order

    def row(self, m: int) -> tuple[int, ...]:
        return self.c[m - 1]

    def __getitem__(self, mj: tuple[int, int]) -> int:
        m, j = mj
        return self.c[m - 1][j]


def hermite_coeffs(m_max: int) -> HermiteCoeffTable:
    """Exact integer table c[m, j] = C(m, 2j) (2j-1)!!.

    ``N(mu, 1)`` has m-th raw moment ``sum_j c[m, j] mu^(m - 2j)``.
    """
    if m_max < 1:
        raise ValueError("m_max must be positive")
    if m_max > 2 * K_MAX:
        raise ValueError(f"m_max={m_max} exceeds 2*K_MAX={2 * K_MAX}")
    rows = []
    for m in range(1, m_max + 1):
        row = tuple(math.comb(m, 2 * j) * double_factorial(2 * j - 1) for j in range(m // 2 + 1))
        # every entry must survive conversion to float without rounding
        if any(float(c) != c for c in row):
            raise OverflowError(f"coefficient row m={m} is not exactly representable")
        rows.append(row)
    return HermiteCoeffTable(m_max, tuple(rows))


@dataclass(frozen=True)
class MomentVector:
    values: tuple[float, ...]  # M_1 .. M_order; M_0 = 1 is implicit
    kind: Kind

    @property
    def order(self) -> int:
        return len(self.values)

    def with_zero(self) -> list[float]:
        return [1.0, *self.values]

    def __sub__(self, other: "MomentVector") -> list[float]:
        n = min(self.order, other.order)
        return [a - b for a, b in zip(self.values[:n], other.values[:n])]


@dataclass(frozen=True)
class PowerSums:
    values: tuple[float, ...]  # P_1 .. P_order
    kind: Kind

    @property
    def order(self) -> int:
        return len(self.values)


def direct_power_sums(means: Sequence[float], order: int) -> PowerSums:
    return PowerSums(tuple(math.fsum(mu**m for mu in means) for m in range(1, order + 1)), Kind.EXACT)


def exact_moments(mixture: Mixture, m_max: int) -> MomentVector:
    table = hermite_coeffs(m_max)
    k = mixture.k
    p = [float(k), *direct_power_sums(mixture.means, m_max).values]
    values = []
    for m in range(1, m_max + 1):
        row = table.row(m)
        values.append(math.fsum(row[j] * p[m - 2 * j] for j in range(len(row))) / k)
    return MomentVector(tuple(values), Kind.EXACT)


def group_count(delta: float) -> int:
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return max(1, math.ceil(MOM_GROUP_FACTOR * math.log(1.0 / delta)))


def raw_moment_sums(x: np.ndarray, m_max: int) -> list[float]:
    """Compensated sums of x^m for m = 1..m_max, powers by repeated product."""
    sums = []
    p = np.array(x, dtype=np.float64)
    for m in range(1, m_max + 1):
        if m > 1:
            p *= x
        sums.append(compensated_sum(p))
    return sums


def empirical_moments(s: SampleSet, m_max: int, delta: float) -> MomentVector:
    """Median-of-means raw moments.

    Samples are split into ``group_count(delta)`` contiguous groups (sizes
    differ by at most one); each moment is the median of the group averages.
    """
    if m_max > 2 * K_MAX:
        raise ValueError(f"m_max={m_max} exceeds 2*K_MAX={2 * K_MAX}")
    g = group_count(delta)
    n = len(s)
    if n < g:
        raise ValueError(f"median-of-means with delta={delta} needs at least n={g} samples, got {n}")
    per_group = np.empty((g, m_max))
    for i, chunk in enumerate(np.array_split(s.values, g)):
        per_group[i] = np.asarray(raw_moment_sums(chunk, m_max)) / chunk.size
    return MomentVector(tuple(float(v) for v in np.median(per_group, axis=0)), Kind.EMPIRICAL)


def inversion_terms(values: Sequence[float], m: int, k: int, table: HermiteCoeffTable) -> list[float]:
    """Summands of k * sum_i (-1)^i c[m, i] X_{m-2i} with X_0 taken from ``values[0]``."""
    row = table.row(m)
    return [k * (-1) ** i * row[i] * values[m - 2 * i] for i in range(len(row))]


def power_sums_from_moments(M: MomentVector, k: int, order: int | None = None) -> PowerSums:
    order = M.order if order is None else order
    if order > M.order:
        raise ValueError(f"need moments up to order {order}, have {M.order}")
    if k < 1:
        raise ValueError("k must be positive")
    table = hermite_coeffs(order)
    mm = M.with_zero()
    values = tuple(math.fsum(inversion_terms(mm, m, k, table)) for m in range(1, order + 1))
    return PowerSums(values, M.kind)


def power_sum_errors(deltas: Sequence[float], k: int) -> list[float]:
    """Power-sum error induced by moment errors ``deltas`` (Delta_1..Delta_m).

    The inversion is linear with Delta_0 = 0, so this is the same alternating
    sum applied to the perturbation alone.
    """
    order = len(deltas)
    table = hermite_coeffs(order)
    dd = [0.0, *deltas]
    return [math.fsum(inversion_terms(dd, m, k, table)) for m in range(1, order + 1)]
