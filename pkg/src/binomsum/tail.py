"""Lugannani-Rice survival probabilities P(S >= s) and the CDF built on them.

For an integer s strictly inside the support the saddlepoint is solved at s
itself and the tail is

    P3 = 1 - Phi(w) - phi(w) (1/w - 1/u1)

with w = sign(u) sqrt(2 (u K'(u) - K(u))) and u1 = (1 - e^-u) sqrt(K''(u)).
The second-order version subtracts

    phi(w) [ (k4/8 - 5 k3^2/24) / u2 - 1/u2^3 - k3 / (2 u2^2) + 1/w^3 ]

where u2 = u sqrt(K''), k3 = K''' / K''^1.5 and k4 = K'''' / K''^2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .cgf import CgfDerivatives, CgfEvaluator
from .density import log_boundary_masses
from .model import BinomialMixture, split_degenerate
from .solver import solve

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# |u| below this uses the closed-form limit at the mean.
MEAN_CASE_THRESHOLD = 1e-5
# Half-width, in units of u sqrt(K''), of the band around the mean where the
# 1/w - 1/u1 and correction terms are interpolated instead of evaluated: both
# are differences of terms that blow up like 1/u^3 but have smooth limits.
SMOOTHING_BAND = 0.05
# Offset between the integer query s and the saddlepoint target.
CONTINUITY_SHIFT = 0.0


class Branch(enum.Enum):
    REGULAR = "regular"
    MEAN_CASE = "mean_case"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class TailResult:
    s: int
    survival: float
    branch: Branch
    w_hat: float = math.nan
    u1_hat: float = math.nan
    u2_hat: float = math.nan
    kappa3: float = math.nan
    kappa4: float = math.nan


def std_normal_pdf(x: float) -> float:
    return INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x: float) -> float:
    """Phi(x) through erfc, so the lower tail keeps full relative precision."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def std_normal_sf(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def _raw_terms(r: CgfDerivatives) -> tuple[float, ...]:
    u = r.u
    sd = math.sqrt(r.k2)
    radicand = 2.0 * (u * r.k1 - r.k)
    if radicand < 0.0:
        radicand = 0.0
    w = math.copysign(math.sqrt(radicand), u)
    u1 = -math.expm1(-u) * sd
    u2 = u * sd
    kappa3 = r.k3 / r.k2**1.5
    kappa4 = r.k4 / r.k2**2
    lr = 1.0 / w - 1.0 / u1
    corr = (kappa4 / 8.0 - 5.0 * kappa3**2 / 24.0) / u2 - 1.0 / u2**3 - kappa3 / (2.0 * u2**2) + 1.0 / w**3
    return w, u1, u2, kappa3, kappa4, lr, corr


class _TailEvaluator:
    """Survival probabilities for a mixture whose probabilities are all interior."""

    def __init__(self, mix: BinomialMixture):
        self.cgf = CgfEvaluator(mix)
        self.total = mix.total
        log_p0, self.log_pn = log_boundary_masses(mix)
        # for 0 < s < N the true tail lies in [P(S=N), 1 - P(S=0)]
        self.floor = math.exp(self.log_pn)
        self.ceiling = -math.expm1(log_p0)
        self.band_u = SMOOTHING_BAND / math.sqrt(self.cgf.variance)
        self._band = None

    def _band_terms(self):
        if self._band is None:
            lo = _raw_terms(self.cgf(-self.band_u))
            hi = _raw_terms(self.cgf(self.band_u))
            self._band = (lo[5], lo[6], hi[5], hi[6])
        return self._band

    def _smooth_terms(self, u: float) -> tuple[float, float]:
        lr_lo, corr_lo, lr_hi, corr_hi = self._band_terms()
        frac = (u + self.band_u) / (2.0 * self.band_u)
        return lr_lo + frac * (lr_hi - lr_lo), corr_lo + frac * (corr_hi - corr_lo)

    def mean_case(self, s: int) -> TailResult:
        r0 = self.cgf(0.0)
        value = 0.5 - INV_SQRT_2PI * (r0.k3 / (6.0 * r0.k2**1.5) - 0.5 / math.sqrt(r0.k2))
        return TailResult(s, self._clamp(value), Branch.MEAN_CASE)

    def _clamp(self, value: float) -> float:
        return min(max(value, self.floor), self.ceiling)

    def survival(self, s: int, guess: float | None = None) -> tuple[TailResult, float | None]:
        if s <= 0:
            return TailResult(s, 1.0, Branch.BOUNDARY), guess
        if s > self.total:
            return TailResult(s, 0.0, Branch.BOUNDARY), guess
        if s == self.total:
            return TailResult(s, self.floor, Branch.BOUNDARY), guess
        if s == 1:
            return TailResult(s, self.ceiling, Branch.BOUNDARY), guess

        root = solve(self.cgf, s - CONTINUITY_SHIFT, guess).root
        u = root.u
        if abs(u) < MEAN_CASE_THRESHOLD:
            return self.mean_case(s), u

        w, u1, u2, kappa3, kappa4, lr, corr = _raw_terms(root)
        if abs(u) < self.band_u:
            lr, corr = self._smooth_terms(u)
        phi = std_normal_pdf(w)
        value = std_normal_sf(w) - phi * lr - phi * corr
        value = self._clamp(value)
        return TailResult(s, value, Branch.REGULAR, w, u1, u2, kappa3, kappa4), u


def survival(mix: BinomialMixture, s: int) -> TailResult:
    """Approximate P(S >= s) for any integer s.

    Values at and beyond the ends of the support are exact: 1 for s <= 0,
    1 - P(S=0) for s = 1, P(S=N) for s = N and 0 above N.
    """
    s = int(math.floor(s))
    split = split_degenerate(mix)
    if split.active is None:
        return TailResult(s, 1.0 if s <= split.offset else 0.0, Branch.BOUNDARY)
    shifted = s - split.offset
    result, _ = _TailEvaluator(split.active).survival(shifted)
    return TailResult(
        s, result.survival, result.branch,
        result.w_hat, result.u1_hat, result.u2_hat, result.kappa3, result.kappa4,
    )


def survival_many(mix: BinomialMixture, s) -> np.ndarray:
    """Vectorised P(S >= s); distinct points are solved in order with warm starts."""
    s = np.floor(np.atleast_1d(np.asarray(s, dtype=float)))
    out = np.empty(s.shape)
    split = split_degenerate(mix)
    finite = np.isfinite(s)
    out[~finite & (s > 0)] = 0.0
    out[~finite & (s < 0)] = 1.0
    out[np.isnan(s)] = math.nan
    if split.active is None:
        out[finite] = np.where(s[finite] <= split.offset, 1.0, 0.0)
        return out
    evaluator = _TailEvaluator(split.active)
    guess = None
    values = {}
    for point in np.unique(s[finite]):
        result, guess = evaluator.survival(int(point) - split.offset, guess)
        values[point] = result.survival
    for idx in np.flatnonzero(finite):
        out[idx] = values[s[idx]]
    return out


def cdf_at(mix: BinomialMixture, q, lower_tail: bool = True, log_scale: bool = False) -> np.ndarray:
    """P(S <= q), or P(S > q) when ``lower_tail`` is False.

    Real-valued q is floored first, since S only takes integer values.
    """
    q = np.floor(np.atleast_1d(np.asarray(q, dtype=float)))
    upper = survival_many(mix, q + 1.0)
    out = upper if not lower_tail else 1.0 - upper
    out = np.clip(out, 0.0, 1.0)
    if log_scale:
        with np.errstate(divide="ignore"):
            return np.log(out)
    return out
