"""Exact reference distribution by repeated convolution, plus a Monte Carlo sampler.

The exact PMF folds components in one at a time: the distribution of the
running sum S_r is convolved with the binomial PMF of the next component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .model import BinomialMixture

MAX_TABLE_ENTRIES = 10**6
COUNTING_MAX_TRIALS = 64
_CHUNK = 1 << 16


class GuardExceeded(ValueError):
    """The exact oracle was asked for a table larger than it will build."""


@dataclass(frozen=True)
class ExactPmf:
    support: np.ndarray
    mass: np.ndarray


def binomial_pmf(n: int, p: float) -> np.ndarray:
    """Binomial(n, p) PMF by the ratio recurrence P(k+1) = P(k) (n-k) p / ((k+1)(1-p)).

    The recurrence runs outward from the mode, so neither tail underflows to
    zero before it has to.
    """
    out = np.zeros(n + 1)
    if p == 0.0:
        out[0] = 1.0
        return out
    if p == 1.0:
        out[n] = 1.0
        return out
    mode = min(int(math.floor((n + 1) * p)), n)
    odds = p / (1.0 - p)
    if mode == 0:
        out[0] = math.exp(n * math.log1p(-p))
    elif mode == n:
        out[n] = math.exp(n * math.log(p))
    else:
        out[mode] = binom.pmf(mode, n, p)
    for k in range(mode, n):
        out[k + 1] = out[k] * (n - k) / (k + 1) * odds
    for k in range(mode, 0, -1):
        out[k - 1] = out[k] * k / (n - k + 1) / odds
    return out


def convolve_pair(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """P(A + B = s) = sum_i P(A = i) P(B = s - i)."""
    return np.convolve(a, b)


def exact_pmf(mix: BinomialMixture, max_entries: int = MAX_TABLE_ENTRIES) -> ExactPmf:
    """Exact PMF of the sum over 0..N. Cost is O(m N^2) in the worst case."""
    if mix.total + 1 > max_entries:
        raise GuardExceeded(
            f"exact table needs {mix.total + 1} entries; the limit is {max_entries}"
        )
    mass = np.array([1.0])
    for n, p in zip(mix.sizes, mix.probs):
        mass = convolve_pair(mass, binomial_pmf(n, p))
    np.clip(mass, 0.0, None, out=mass)
    return ExactPmf(np.arange(mix.total + 1), mass)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 (numpy >= 1.17), so a seed reproduces the same stream everywhere."""
    return np.random.Generator(np.random.PCG64(seed))


def _draw_component(rng: np.random.Generator, n: int, p: float, count: int) -> np.ndarray:
    if p == 0.0:
        return np.zeros(count, dtype=np.int64)
    if p == 1.0:
        return np.full(count, n, dtype=np.int64)
    if n <= COUNTING_MAX_TRIALS:
        out = np.empty(count, dtype=np.int64)
        for start in range(0, count, _CHUNK):
            stop = min(start + _CHUNK, count)
            out[start:stop] = (rng.random((stop - start, n)) < p).sum(axis=1)
        return out
    cdf = np.cumsum(binomial_pmf(n, p))
    draws = np.searchsorted(cdf, rng.random(count), side="right")
    return np.minimum(draws, n).astype(np.int64)


def sample(mix: BinomialMixture, count: int, seed: int = 42) -> np.ndarray:
    """Draw ``count`` exact realisations of S, one binomial draw per component.

    Components with at most 64 trials are drawn by counting Bernoulli
    successes; larger ones by inverting their CDF with a single uniform.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    rng = make_rng(seed)
    total = np.zeros(count, dtype=np.int64)
    for n, p in zip(mix.sizes, mix.probs):
        total += _draw_component(rng, n, p, count)
    return total


def empirical_pmf(draws, support_max: int) -> np.ndarray:
    """Relative frequency of each value 0..support_max among ``draws``."""
    draws = np.asarray(draws, dtype=np.int64)
    if draws.size == 0:
        raise ValueError("draws must be non-empty")
    inside = draws[(draws >= 0) & (draws <= support_max)]
    return np.bincount(inside, minlength=support_max + 1) / draws.size
