"""Power sums -> elementary symmetric values -> parameter polynomial -> roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import ABERTH_ANGLE_OFFSET, ABERTH_MAX_ITER, ABERTH_TOL, IM_TOL
from .mixture import Mixture, center
from .moments import Kind, PowerSums, exact_moments, power_sums_from_moments
from .numeric import horner, horner_compensated


@dataclass(frozen=True)
class ParamPolynomial:
    e: tuple[float, ...]  # e_1 .. e_k; e_0 = 1
    kind: Kind

    @property
    def k(self) -> int:
        return len(self.e)

    @property
    def coeffs(self) -> np.ndarray:
        """Descending coefficients (1, -e_1, e_2, ..., (-1)^k e_k)."""
        return np.array([1.0] + [(-1) ** n * en for n, en in enumerate(self.e, 1)])


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    converged: tuple[bool, ...]
    residual: float
    iterations: int = 0


def elementary_from_power_sums(P: PowerSums, k: int) -> ParamPolynomial:
    if P.order < k:
        raise ValueError(f"need power sums up to order {k}, have {P.order}")
    p = P.values
    e = [1.0]
    for n in range(1, k + 1):
        e.append(math.fsum((-1) ** (j - 1) * e[n - j] * p[j - 1] for j in range(1, n + 1)) / n)
    return ParamPolynomial(tuple(e[1:]), P.kind)


def scaled_residual(coeffs, z) -> float:
    """|p(z)| / sum |a_i| |z|^(deg - i): the backward error of z as a root."""
    z = complex(z)
    scale = horner(np.abs(coeffs), abs(z))
    if z.imag == 0 and not np.iscomplexobj(coeffs):
        val = abs(horner_compensated(coeffs, z.real))
    else:
        val = abs(horner(coeffs, z))
    return val / scale if scale > 0 else val


def _pair_conjugates(z: np.ndarray) -> np.ndarray:
    """Symmetrise complex roots of a real polynomial into exact conjugate pairs.

    A root is only paired with a partner whose conjugate is closer to it than
    its own conjugate is, so near-real roots carrying rounding dust are never
    averaged together.
    """
    z = z.copy()
    upper = [i for i in range(z.size) if z[i].imag > 0]
    free = {i for i in range(z.size) if z[i].imag < 0}
    for i in sorted(upper, key=lambda i: -z[i].imag):
        if not free:
            break
        j = min(free, key=lambda j: abs(z[i] - np.conj(z[j])))
        if abs(z[i] - np.conj(z[j])) < z[i].imag:
            free.remove(j)
            w = 0.5 * (z[i] + np.conj(z[j]))
            z[i], z[j] = w, np.conj(w)
    return z


def _polish_real(coeffs: np.ndarray, x: float, steps: int = 3) -> float:
    """A few Newton steps with compensated evaluation; kept only if |p| drops."""
    dcoeffs = np.polyder(coeffs)
    best, best_val = x, abs(horner_compensated(coeffs, x))
    for _ in range(steps):
        d = horner_compensated(dcoeffs, x)
        if d == 0:
            break
        step = horner_compensated(coeffs, x) / d
        if not math.isfinite(step):
            break
        x -= step
        val = abs(horner_compensated(coeffs, x))
        if val < best_val:
            best, best_val = x, val
    return best


def _snap_real(coeffs: np.ndarray, z: complex, im_limit: float = 1e-6) -> complex:
    """Replace a nearly real root by a polished real one if that fits p better."""
    if abs(z.imag) > im_limit * (1 + abs(z)):
        return z
    x = _polish_real(coeffs, z.real)
    if abs(horner_compensated(coeffs, x)) <= abs(horner(coeffs, z)):
        return complex(x, 0.0)
    return z


def aberth(coeffs, max_iter: int = ABERTH_MAX_ITER, tol: float = ABERTH_TOL) -> RootSet:
    """Aberth-Ehrlich simultaneous iteration on descending ``coeffs``.

    Starts from a circle of radius 1 + max|a_i / a_0| with angles
    (2 pi j + 0.25) / deg. Roots that do not settle within ``max_iter`` are
    returned with ``converged`` False rather than raising.
    """
    a = np.asarray(coeffs)
    nz = np.flatnonzero(a)
    if nz.size == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    a = a[nz[0]:]
    deg = a.size - 1
    if deg == 0:
        return RootSet((), (), 0.0, 0)
    a = a / a[0]
    real_coeffs = not np.iscomplexobj(a) or np.all(a.imag == 0)
    if real_coeffs:
        a = a.real.astype(np.float64)
    da = np.polyder(a)
    radius = 1.0 + np.max(np.abs(a[1:]))
    j = np.arange(deg)
    z = radius * np.exp(1j * (2 * np.pi * j + ABERTH_ANGLE_OFFSET) / deg)
    done = np.zeros(deg, dtype=bool)
    it = 0
    eps = np.finfo(float).eps
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for it in range(1, max_iter + 1):
            p = np.polyval(a, z)
            dp = np.polyval(da, z)
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
            w = np.where(p == 0, 0.0, w)
            w = np.where(np.isfinite(w), w, 0.0)
            z = z - np.where(done, 0.0, w)
            scale = np.polyval(np.abs(a), np.abs(z))
            small = np.abs(w) < tol * (1 + np.abs(z))
            at_rounding = np.abs(np.polyval(a, z)) <= 4 * deg * eps * scale
            done |= small | at_rounding
            if done.all():
                break
    if real_coeffs:
        z = _pair_conjugates(z)
        z = np.array([_snap_real(a, zi) for zi in z])
    residual = max(scaled_residual(a, zi) for zi in z)
    return RootSet(tuple(complex(zi) for zi in z), tuple(bool(d) for d in done), float(residual), it)


def find_roots(p: ParamPolynomial) -> RootSet:
    return aberth(p.coeffs)


def extract_real_means(r: RootSet, k: int, im_tol: float = IM_TOL) -> tuple[list[float], int]:
    """Project roots to the real line.

    A root whose imaginary part exceeds ``im_tol * (1 + |Re|)`` is replaced by
    its real part, so a conjugate pair contributes two copies of their shared
    real part. Returns the sorted estimates and the number of such roots.
    """
    if len(r.roots) != k:
        raise ValueError(f"expected {k} roots, got {len(r.roots)}")
    flagged = sum(abs(z.imag) > im_tol * (1 + abs(z.real)) for z in r.roots)
    return sorted(z.real for z in r.roots), int(flagged)


def match_roots(estimated: Sequence[float], truth: Sequence[float]) -> list[tuple[int, int, float]]:
    """Pair estimates with true means in sorted order.

    Returns ``(estimate index, truth index, |error|)`` triples, indices into the
    inputs as given, ordered by ascending truth value. On the line, sorted
    pairing minimises both the max and the total absolute error.
    """
    if len(estimated) != len(truth):
        raise ValueError("estimated and truth must have the same length")
    ie = sorted(range(len(estimated)), key=lambda i: estimated[i])
    it = sorted(range(len(truth)), key=lambda i: truth[i])
    return [(a, b, abs(estimated[a] - truth[b])) for a, b in zip(ie, it)]


def recover_means(power_sums: PowerSums, k: int, im_tol: float = IM_TOL) -> tuple[list[float], RootSet, int]:
    poly = elementary_from_power_sums(power_sums, k)
    roots = find_roots(poly)
    means, flagged = extract_real_means(roots, k, im_tol)
    return means, roots, flagged


def uniqueness_check(mixture: Mixture, tol: float = 1e-7) -> bool:
    """Noiseless witness: the first k exact moments reproduce the means."""
    centered, shift = center(mixture.means)
    k = mixture.k
    moments = exact_moments(Mixture(tuple(centered)), k)
    means, _, _ = recover_means(power_sums_from_moments(moments, k), k)
    return all(abs(m + shift - mu) <= tol for m, mu in zip(means, mixture.means))


def vieta_coeffs(roots: Sequence[float]) -> np.ndarray:
    """Expand prod (x - r) one factor at a time (descending coefficients)."""
    c = np.array([1.0])
    for r in roots:
        c = np.append(c, 0.0) - r * np.append(0.0, c)
    return c


__all__ = [
    "ParamPolynomial",
    "RootSet",
    "aberth",
    "elementary_from_power_sums",
    "extract_real_means",
    "find_roots",
    "match_roots",
    "recover_means",
    "scaled_residual",
    "uniqueness_check",
    "vieta_coeffs",
]
