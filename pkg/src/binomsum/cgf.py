"""Cumulant generating function of a binomial mixture and its derivatives.

K(u) = sum n_i ln(1 - p_i + p_i e^u). Writing q_i for the tilted success
probability p_i e^u / (1 - p_i + p_i e^u), the derivatives are

    K'    = sum n_i q_i
    K''   = sum n_i q_i (1 - q_i)
    K'''  = sum n_i q_i (1 - q_i) (1 - 2 q_i)
    K'''' = sum n_i q_i (1 - q_i) (1 - 6 q_i (1 - q_i))
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .model import BinomialMixture


@dataclass(frozen=True)
class CgfDerivatives:
    u: float
    k: float
    k1: float
    k2: float
    k3: float
    k4: float


def _check_interior(mix: BinomialMixture) -> None:
    for p in mix.probs:
        if not 0.0 < p < 1.0:
            raise ValueError(
                f"probability {p} is degenerate; split the mixture with split_degenerate first"
            )


def tilted_probs(p: np.ndarray, u: float) -> tuple[np.ndarray, np.ndarray]:
    """Return (q, 1 - q), each computed without cancellation for any finite u."""
    a = np.log(p) - np.log1p(-p) + u
    return expit(a), expit(-a)


def cgf_value(n: np.ndarray, p: np.ndarray, u: float) -> float:
    if u <= 0.0:
        shrink = p * math.expm1(u)
        # log1p keeps relative accuracy near u = 0; once 1 + shrink cancels, go through logs
        with np.errstate(divide="ignore"):
            terms = np.where(
                shrink > -0.5,
                np.log1p(shrink),
                np.logaddexp(np.log1p(-p), np.log(p) + u),
            )
    else:
        # ln(1 - p + p e^u) = u + ln(p + (1 - p) e^-u)
        terms = u + np.logaddexp(np.log(p), np.log1p(-p) - u)
    return float(np.dot(n, terms))


def _derivatives(n: np.ndarray, p: np.ndarray, u: float) -> CgfDerivatives:
    q, qc = tilted_probs(p, u)
    v = n * q * qc
    return CgfDerivatives(
        u=u,
        k=cgf_value(n, p, u),
        k1=float(np.dot(n, q)),
        k2=float(v.sum()),
        k3=float(np.dot(v, qc - q)),
        k4=float(np.dot(v, 1.0 - 6.0 * q * qc)),
    )


def eval_cgf(mix: BinomialMixture, u: float) -> CgfDerivatives:
    """Evaluate K and its first four derivatives at ``u``.

    Every probability must lie strictly inside (0, 1).
    """
    u = float(u)
    if not math.isfinite(u):
        raise ValueError(f"u must be finite, got {u}")
    _check_interior(mix)
    return _derivatives(mix.size_array(), mix.prob_array(), u)


class CgfEvaluator:
    """Holds the mixture arrays so repeated evaluations skip conversion and checks."""

    def __init__(self, mix: BinomialMixture):
        _check_interior(mix)
        self.mix = mix
        self.n = mix.size_array()
        self.p = mix.prob_array()
        self.total = float(mix.total)
        self.mean = float(np.dot(self.n, self.p))
        self.variance = float(np.dot(self.n, self.p * (1.0 - self.p)))

    def __call__(self, u: float) -> CgfDerivatives:
        return _derivatives(self.n, self.p, float(u))

    def slope(self, u: float) -> tuple[float, float]:
        """K'(u) and K''(u) only; the solver's inner loop needs nothing else."""
        q, qc = tilted_probs(self.p, u)
        return float(np.dot(self.n, q)), float(np.dot(self.n, q * qc))
