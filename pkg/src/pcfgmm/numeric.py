"""Compensated arithmetic helpers.

``compensated_sum`` is a vectorised Neumaier (Kahan-Babuska) summation: the
array is laid out as rows of ``width`` lanes and each lane carries its own
running sum and correction term. Lanes are combined with ``math.fsum``.
"""

from __future__ import annotations

import math

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def compensated_sum(a, width: int = 1 << 14) -> float:
    a = np.asarray(a, dtype=np.float64).ravel()
    n = a.size
    if n <= width:
        return math.fsum(a.tolist())
    rows = n // width
    body = a[: rows * width].reshape(rows, width)
    s = body[0].copy()
    c = np.zeros(width)
    for x in body[1:]:
        t = s + x
        big = np.abs(s) >= np.abs(x)
        c += np.where(big, (s - t) + x, (x - t) + s)
        s = t
    return math.fsum(s.tolist() + c.tolist() + a[rows * width:].tolist())


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def horner_compensated(coeffs, x: float) -> float:
    """Evaluate a real polynomial (descending coefficients) at real ``x``.

    Compensated Horner scheme: the result is as accurate as if computed in
    twice the working precision, then rounded.
    """
    coeffs = [float(c) for c in coeffs]
    x = float(x)
    s = coeffs[0]
    err = 0.0
    for a in coeffs[1:]:
        p, pi = two_prod(s, x)
        s, sigma = two_sum(p, a)
        err = err * x + (pi + sigma)
    return s + err


def horner(coeffs, z):
    acc = coeffs[0] * 1.0
    for a in coeffs[1:]:
        acc = acc * z + a
    return acc
