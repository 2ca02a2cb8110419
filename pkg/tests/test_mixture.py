import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcfgmm.constants import K_MAX
from pcfgmm.mixture import Mixture, center, mixture_variance, pcf, variance_aware_pcf
from pcfgmm.sampling import sample

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
mean_lists = st.lists(finite, min_size=2, max_size=8)
# multiples of 1/64 in [-50, 50]: sums of two of these are exact in binary64
dyadic = st.integers(-3200, 3200).map(lambda i: i / 64)


def test_constructor_sorts_and_validates():
    assert Mixture((3, 1, 2)).means == (1.0, 2.0, 3.0)
    assert Mixture((0, 1)).weight == 0.5
    assert Mixture((0, 1)).component_variance == 1.0
    with pytest.raises(ValueError):
        Mixture((1.0,))
    with pytest.raises(ValueError):
        Mixture(tuple(range(K_MAX + 1)))
    with pytest.raises(ValueError):
        Mixture((0.0, math.inf))
    # duplicates are allowed at construction
    assert pcf(Mixture((1.0, 1.0))).min_pcf == 0


def test_pcf_small_examples():
    r = pcf(Mixture((0, 1, 2)))
    assert r.per_mean_pcf == (2, 1, 2)
    assert r.min_gap == 1
    eps = 0.1
    r = pcf(Mixture((-eps, 0, eps)))
    assert r.per_mean_pcf == pytest.approx((0.02, 0.01, 0.02), rel=1e-12)
    assert r.min_gap == pytest.approx(0.1, rel=1e-12)


def test_pcf_mixture_a_matches_brute_force():
    eps = 0.1
    means = np.concatenate([[0], np.cumsum([eps, eps, eps, eps, 1, eps])])
    brute = [math.prod(abs(means[i] - means[j]) for j in range(7) if j != i) for i in range(7)]
    r = pcf(Mixture(tuple(means)))
    assert r.per_mean_pcf == pytest.approx(brute, rel=1e-12)
    assert int(np.argmin(r.per_mean_pcf)) == 2  # third mean
    assert r.min_pcf == pytest.approx(4 * eps**4 * (1 + 2 * eps) * (1 + 3 * eps), rel=1e-9)
    assert r.min_pcf == pytest.approx(6.24e-4, rel=1e-9)


def test_variance_aware_pcf_examples():
    assert variance_aware_pcf([0, 0], [1, 4]) == pytest.approx([math.sqrt(3)] * 2)
    assert variance_aware_pcf([0, 5], [1, 1]) == [5, 5]
    assert variance_aware_pcf([0, 0.1, 3], [1, 1.09, 1])[0] == pytest.approx(0.9, rel=1e-12)
    with pytest.raises(ValueError):
        variance_aware_pcf([0, 1], [1])


def test_variance_aware_pcf_reduces_to_pcf_for_equal_variances():
    means = [-1.3, 0.2, 0.9, 2.5]
    assert variance_aware_pcf(means, [1] * 4) == pytest.approx(list(pcf(Mixture(tuple(means))).per_mean_pcf))


def test_mixture_variance_examples():
    assert mixture_variance(Mixture((0, 0))) == 1
    assert mixture_variance(Mixture((-1, 1))) == 2
    assert mixture_variance(Mixture((-1, 0, 1))) == pytest.approx(1 + 2 / 3, rel=1e-15)


def test_mixture_variance_against_samples():
    m = Mixture((-1, 0, 1))
    x = sample(m, 10**7, seed=99).values
    assert np.var(x) == pytest.approx(5 / 3, rel=5e-3)


def test_center_examples():
    assert center([1, 3]) == ([-1, 1], 2)
    assert center([0, 0, 0]) == ([0, 0, 0], 0)
    out, shift = center([0, 0.3, 0.6])
    assert shift == pytest.approx(0.3, abs=1e-15)
    assert out == pytest.approx([-0.3, 0, 0.3], abs=1e-15)


@given(st.lists(dyadic, min_size=2, max_size=8), dyadic)
def test_pcf_translation_invariant(means, c):
    base = pcf(Mixture(tuple(means)))
    moved = pcf(Mixture(tuple(m + c for m in means)))
    assert moved.per_mean_pcf == pytest.approx(base.per_mean_pcf, rel=1e-12, abs=0)
    assert moved.min_gap == base.min_gap


@given(mean_lists, st.floats(-4, 4).filter(lambda c: abs(c) > 1e-3))
def test_pcf_scaling(means, c):
    k = len(means)
    base = pcf(Mixture(tuple(means)))
    scaled = pcf(Mixture(tuple(c * m for m in means)))
    order = np.argsort([c * m for m in sorted(means)], kind="stable")
    expected = [abs(c) ** (k - 1) * base.per_mean_pcf[i] for i in order]
    assert list(scaled.per_mean_pcf) == pytest.approx(expected, rel=1e-9, abs=1e-300)


@given(mean_lists, st.randoms())
def test_pcf_permutation_invariant(means, rnd):
    shuffled = list(means)
    rnd.shuffle(shuffled)
    assert pcf(Mixture(tuple(means))) == pcf(Mixture(tuple(shuffled)))


@given(st.lists(dyadic, min_size=2, max_size=8))
def test_pcf_bounded_by_span_power(means):
    r = pcf(Mixture(tuple(means)))
    span = max(means) - min(means)
    for p in r.per_mean_pcf:
        assert p <= span ** (len(means) - 1) * (1 + 1e-12)
    assert (r.min_pcf == 0) == (len(set(means)) < len(means))


@given(mean_lists)
def test_mixture_variance_at_least_one(means):
    v = mixture_variance(Mixture(tuple(means)))
    assert v >= 1
    if len(set(means)) == 1:
        assert v == 1


@settings(max_examples=200)
@given(st.lists(finite, min_size=1, max_size=12))
def test_center_properties(means):
    out, shift = center(means)
    assert abs(math.fsum(out)) <= 1e-12 * len(means) * max(1.0, max(abs(m) for m in means))
    for (a, b), (x, y) in zip(itertools.combinations(out, 2), itertools.combinations(means, 2)):
        assert (a - b) == pytest.approx(x - y, abs=4e-15 * max(1.0, max(abs(m) for m in means)))
