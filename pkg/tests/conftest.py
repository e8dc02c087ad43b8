import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from binomsum import new_mixture


def brute_force_pmf(sizes, probs):
    """Enumerate every Bernoulli outcome vector; only sensible for small N."""
    trials = [p for n, p in zip(sizes, probs) for _ in range(n)]
    out = np.zeros(len(trials) + 1)
    for outcome in itertools.product((0, 1), repeat=len(trials)):
        weight = 1.0
        for hit, p in zip(outcome, trials):
            weight *= p if hit else 1.0 - p
        out[sum(outcome)] += weight
    return out


@st.composite
def mixtures(draw, max_components=5, max_size=10, max_total=None, interior=True, moderate=False):
    """Random mixtures; ``moderate`` draws probabilities from [0.01, 0.99] plus exact 0 and 1."""
    m = draw(st.integers(1, max_components))
    sizes = draw(st.lists(st.integers(1, max_size), min_size=m, max_size=m))
    if max_total is not None:
        sizes = _trim(sizes, max_total)
    if moderate:
        element = st.one_of(st.floats(0.01, 0.99), st.sampled_from([0.0, 1.0]))
    elif interior:
        element = st.floats(0.01, 0.99)
    else:
        element = st.floats(0.0, 1.0)
    probs = draw(st.lists(element, min_size=len(sizes), max_size=len(sizes)))
    return new_mixture(sizes, probs)


def _trim(sizes, max_total):
    out = []
    for n in sizes:
        room = max_total - sum(out)
        if room <= 0:
            break
        out.append(min(n, room))
    return out


@pytest.fixture
def healthcare():
    from binomsum.model import healthcare_mixture

    return healthcare_mixture()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
