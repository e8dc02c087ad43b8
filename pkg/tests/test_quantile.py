import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.stats import binom

from binomsum import QuantileQuery, cdf_at, new_mixture, quantile, random
from binomsum.model import variance

from conftest import mixtures


def test_extremes():
    mix = new_mixture([4, 6], [0.3, 0.5])
    assert quantile(mix, 1.0)[0] == 10
    assert quantile(mix, 0.0)[0] == 0


def test_median_of_bin200():
    mix = new_mixture([100, 100], [0.5, 0.5])
    assert abs(quantile(mix, 0.5)[0] - binom.median(200, 0.5)) <= 1


def test_query_decoding():
    mix = new_mixture([100, 100], [0.5, 0.5])
    plain = quantile(mix, [0.9])[0]
    assert quantile(mix, QuantileQuery(math.log(0.9), log_scale=True))[0] == plain
    assert quantile(mix, QuantileQuery(0.1, lower_tail=False))[0] == plain
    for bad in (1.5, -0.1, float("nan")):
        with pytest.raises(ValueError):
            quantile(mix, bad)
    with pytest.raises(ValueError):
        quantile(mix, QuantileQuery(0.5, log_scale=True))


def test_degenerate_mixture():
    mix = new_mixture([3, 2], [1.0, 0.0])
    np.testing.assert_array_equal(quantile(mix, [0.0, 0.1, 1.0]), [0, 3, 3])


@settings(max_examples=60, deadline=None)
@given(mixtures(max_size=15, moderate=True), st.floats(0.0, 1.0))
def test_galois_connection(mix, p):
    assume(variance(mix) >= 0.5)
    q = quantile(mix, p)[0]
    s = np.arange(0, mix.total + 1)
    cdf = cdf_at(mix, s)
    np.testing.assert_array_equal(q <= s, p <= cdf)
    assert cdf_at(mix, q)[0] >= p
    if q > 0:
        assert cdf_at(mix, q - 1)[0] < p


@settings(max_examples=40, deadline=None)
@given(mixtures(max_size=20), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_monotone(mix, a, b):
    assume(variance(mix) >= 0.5)
    lo, hi = sorted((a, b))
    assert quantile(mix, lo)[0] <= quantile(mix, hi)[0]


def test_random_degenerate():
    assert np.all(random(new_mixture([1], [0.0]), 100) == 0)


def test_random_variance():
    mix = new_mixture([20, 30], [0.2, 0.7])
    draws = random(mix, 10**5, seed=3).astype(float)
    var = mix.variance()
    fourth = sum(n * p * (1 - p) * (1 - 6 * p * (1 - p)) for n, p in zip(mix.sizes, mix.probs)) + 3 * var**2
    assert abs(draws.var(ddof=1) - var) < 5 * np.sqrt((fourth - var**2) / draws.size)


def test_random_reproducible():
    mix = new_mixture([20, 30], [0.2, 0.7])
    np.testing.assert_array_equal(random(mix, 50, seed=8), random(mix, 50, seed=8))
