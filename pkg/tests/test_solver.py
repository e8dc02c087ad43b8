import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from binomsum import eval_cgf, new_mixture, solve_saddlepoint
from binomsum.model import healthcare_mixture, mean

from conftest import mixtures


def test_single_binomial_closed_form():
    root = solve_saddlepoint(new_mixture([10], [0.5]), 7)
    assert root.u == pytest.approx(math.log(7 / 3), rel=1e-12)
    assert root.u == pytest.approx(0.8473, abs=1e-4)


@pytest.mark.parametrize("n,p,t", [(10, 0.3, 1.5), (40, 0.9, 39.2), (5, 0.01, 4.99)])
def test_single_binomial_inversion(n, p, t):
    expected = math.log(t * (1 - p) / ((n - t) * p))
    assert solve_saddlepoint(new_mixture([n], [p]), t).u == pytest.approx(expected, rel=1e-10)


@given(mixtures())
def test_mean_gives_zero(mix):
    root = solve_saddlepoint(mix, mean(mix))
    assert root.u == 0.0


def test_healthcare_residual():
    mix = healthcare_mixture()
    root = solve_saddlepoint(mix, 3)
    assert abs(eval_cgf(mix, root.u).k1 - 3) <= 1e-10
    assert root.residual <= 1e-10
    assert root.root.k2 > 0


@given(mixtures(max_size=30), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_monotone_and_signed(mix, a, b):
    n = mix.total
    ta, tb = sorted((1e-6 + a * (n - 2e-6), 1e-6 + b * (n - 2e-6)))
    ua, ub = solve_saddlepoint(mix, ta).u, solve_saddlepoint(mix, tb).u
    assert ua <= ub
    mu = mean(mix)
    for t, u in ((ta, ua), (tb, ub)):
        if t < mu:
            assert u < 0
        elif t > mu:
            assert u > 0


@pytest.mark.parametrize("t", [0.0, -1.0, 5.0, 6.0, 1e-10, 5 - 1e-10])
def test_rejects_out_of_range(t):
    with pytest.raises(ValueError):
        solve_saddlepoint(new_mixture([2, 3], [0.4, 0.6]), t)


def test_warm_start_agrees_with_cold():
    mix = new_mixture([30, 12, 7], [0.2, 0.7, 0.45])
    cold = solve_saddlepoint(mix, 20)
    warm = solve_saddlepoint(mix, 20, guess=cold.u + 0.3)
    # both stop once |K' - t| <= 1e-12 N, so the roots agree to about that over K''
    assert warm.u == pytest.approx(cold.u, abs=2 * 1e-12 * mix.total / cold.root.k2)
    assert warm.iterations <= cold.iterations + 2


def test_extreme_targets_converge():
    mix = new_mixture([1000, 1000], [0.001, 0.999])
    for t in (1e-6, 0.5, 1000.0, 1999.5, 2000 - 1e-6):
        root = solve_saddlepoint(mix, t)
        assert root.residual <= 1e-12 * 2000
