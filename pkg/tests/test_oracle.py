import numpy as np
import pytest
from hypothesis import given, settings
from scipy.stats import binom

from binomsum import GuardExceeded, empirical_pmf, exact_pmf, new_mixture, sample
from binomsum.density import boundary_masses
from binomsum.model import concat, healthcare_mixture
from binomsum.oracle import binomial_pmf

from conftest import brute_force_pmf, mixtures


def test_single_binomial():
    np.testing.assert_allclose(exact_pmf(new_mixture([2], [0.5])).mass, [0.25, 0.5, 0.25], atol=1e-16)


def test_two_bernoullis_match_enumeration():
    expected = brute_force_pmf([1, 1], [0.5, 0.5])
    np.testing.assert_allclose(expected, [0.25, 0.5, 0.25])
    np.testing.assert_allclose(exact_pmf(new_mixture([1, 1], [0.5, 0.5])).mass, expected, atol=1e-16)


def test_identical_probabilities_are_binomial():
    mass = exact_pmf(new_mixture([10, 100], [0.3])).mass
    np.testing.assert_allclose(mass, binom.pmf(np.arange(111), 110, 0.3), rtol=0, atol=1e-12)


@pytest.mark.parametrize("n,p", [(1, 0.3), (17, 0.0), (17, 1.0), (50, 0.5), (1000, 0.9), (2000, 0.001)])
def test_component_pmf(n, p):
    np.testing.assert_allclose(binomial_pmf(n, p), binom.pmf(np.arange(n + 1), n, p), rtol=1e-10, atol=1e-300)


def test_component_pmf_no_underflow_at_mode():
    # (1 - p)^n underflows here; starting from the mode keeps the bulk intact
    mass = binomial_pmf(5000, 0.95)
    assert mass.sum() == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(mixtures(max_total=12, interior=False))
def test_matches_brute_force(mix):
    np.testing.assert_allclose(exact_pmf(mix).mass, brute_force_pmf(mix.sizes, mix.probs), rtol=0, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(mixtures(max_size=30), mixtures(max_size=30))
def test_concatenation_is_convolution(a, b):
    joined = exact_pmf(concat(a, b)).mass
    np.testing.assert_allclose(joined, np.convolve(exact_pmf(a).mass, exact_pmf(b).mass), rtol=0, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(mixtures(max_size=40))
def test_invariants(mix):
    mass = exact_pmf(mix).mass
    assert abs(mass.sum() - 1) <= 1e-9
    assert np.all(mass >= 0)
    p0, pn = boundary_masses(mix)
    assert mass[0] == pytest.approx(p0, rel=1e-10, abs=1e-300)
    assert mass[-1] == pytest.approx(pn, rel=1e-10, abs=1e-300)


def test_guard():
    with pytest.raises(GuardExceeded, match="limit"):
        exact_pmf(new_mixture([600_000, 600_000], [0.5]))
    with pytest.raises(GuardExceeded):
        exact_pmf(new_mixture([50], [0.5]), max_entries=10)


def test_deterministic_component():
    assert np.all(sample(new_mixture([1], [1.0]), 500, seed=3) == 1)


def test_sample_mean():
    draws = sample(new_mixture([2, 3], [0.5, 0.5]), 10**5, seed=1)
    se = np.sqrt(1.25 / draws.size)
    assert abs(draws.mean() - 2.5) < 4 * se


@pytest.mark.parametrize("sizes,probs", [([20, 30], [0.2, 0.7]), ([100, 300], [0.35, 0.05])])
def test_sample_moments(sizes, probs):
    # second case exercises the inversion path (n > 64)
    mix = new_mixture(sizes, probs)
    draws = sample(mix, 10**5, seed=9).astype(float)
    mu, var = mix.mean(), mix.variance()
    assert abs(draws.mean() - mu) < 5 * np.sqrt(var / draws.size)
    fourth = sum(n * p * (1 - p) * (1 - 6 * p * (1 - p)) for n, p in zip(sizes, probs)) + 3 * var**2
    se_var = np.sqrt((fourth - var**2) / draws.size)
    assert abs(draws.var(ddof=1) - var) < 5 * se_var


def test_sample_reproducible():
    mix = new_mixture([5, 90], [0.3, 0.6])
    np.testing.assert_array_equal(sample(mix, 1000, seed=5), sample(mix, 1000, seed=5))
    assert not np.array_equal(sample(mix, 1000, seed=5), sample(mix, 1000, seed=6))


def test_sample_rejects_nonpositive_count():
    with pytest.raises(ValueError):
        sample(new_mixture([2], [0.5]), 0)


def test_empirical_pmf():
    np.testing.assert_array_equal(empirical_pmf([0, 0, 1, 1], 2), [0.5, 0.5, 0.0])
    np.testing.assert_array_equal(empirical_pmf([3, 3, 3], 3), [0, 0, 0, 1])
    with pytest.raises(ValueError):
        empirical_pmf([], 2)


def test_empirical_pmf_sampling_error():
    freq = empirical_pmf(sample(new_mixture([2], [0.5]), 10**4, seed=0), 2)
    assert np.abs(freq - [0.25, 0.5, 0.25]).max() < 0.02


def test_healthcare_simulation_close_to_exact():
    mix = healthcare_mixture()
    freq = empirical_pmf(sample(mix, 10**6, seed=42), mix.total)
    assert 0.5 * np.abs(freq - exact_pmf(mix).mass).sum() < 5e-3
