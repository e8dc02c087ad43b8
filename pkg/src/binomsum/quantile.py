"""Quantiles of the approximated distribution and random generation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import BinomialMixture, split_degenerate
from .oracle import sample
from .tail import _TailEvaluator


@dataclass(frozen=True)
class QuantileQuery:
    p: float
    lower_tail: bool = True
    log_scale: bool = False

    def decoded(self) -> float:
        """Lower-tail probability in [0, 1] after undoing log scale and tail flip."""
        p = math.exp(self.p) if self.log_scale else float(self.p)
        if not self.lower_tail:
            p = 1.0 - p
        if math.isnan(p) or not 0.0 <= p <= 1.0:
            raise ValueError(f"probability {self.p!r} does not decode into [0, 1]")
        return p


class _Cdf:
    """Lazily evaluated saddlepoint CDF, memoised per support point."""

    def __init__(self, mix: BinomialMixture):
        split = split_degenerate(mix)
        self.offset = split.offset
        self.active_total = split.active.total if split.active is not None else 0
        self.evaluator = _TailEvaluator(split.active) if split.active is not None else None
        self.cache: dict[int, float] = {}

    def __call__(self, s: int) -> float:
        if s not in self.cache:
            if self.evaluator is None:
                value = 1.0 if s >= self.offset else 0.0
            else:
                result, _ = self.evaluator.survival(s + 1 - self.offset)
                value = min(max(1.0 - result.survival, 0.0), 1.0)
            self.cache[s] = value
        return self.cache[s]


def quantile(mix: BinomialMixture, queries) -> np.ndarray:
    """Smallest s in 0..N with P(S <= s) >= p for each query.

    ``queries`` may be QuantileQuery objects or plain lower-tail
    probabilities. Each query costs O(log N) CDF evaluations.
    """
    if isinstance(queries, (QuantileQuery, float, int)):
        queries = [queries]
    cdf = _Cdf(mix)
    total = mix.total
    out = np.empty(len(queries), dtype=np.int64)
    for i, query in enumerate(queries):
        if not isinstance(query, QuantileQuery):
            query = QuantileQuery(float(query))
        p = query.decoded()
        if p == 0.0:
            out[i] = 0
            continue
        lo, hi = -1, total  # cdf(lo) < p <= cdf(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if cdf(mid) >= p:
                hi = mid
            else:
                lo = mid
        out[i] = hi
    return out


def random(mix: BinomialMixture, count: int, seed: int = 42) -> np.ndarray:
    """Exact draws of S (component-wise sampling, not the approximation)."""
    return sample(mix, count, seed)
