"""Second-order saddlepoint PMF with exact boundary masses.

The interior points 1..N-1 get second-order saddlepoint densities, which are
then rescaled so that together they carry exactly the probability left over
by the two boundary masses P(S=0) and P(S=N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .cgf import CgfEvaluator
from .model import BinomialMixture, split_degenerate
from .solver import SaddlepointRoot, solve

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class PmfTable:
    support: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        self.support.setflags(write=False)
        self.mass.setflags(write=False)

    @property
    def total(self) -> int:
        return len(self.mass) - 1


def log_boundary_masses(mix: BinomialMixture) -> tuple[float, float]:
    log_p0 = log_pn = 0.0
    for n, p in zip(mix.sizes, mix.probs):
        # 0 ** 0 == 1: a component only contributes a log term when its factor is not 1
        if p > 0.0:
            log_p0 += n * math.log1p(-p) if p < 1.0 else -math.inf
        if p < 1.0:
            log_pn += n * math.log(p) if p > 0.0 else -math.inf
    return log_p0, log_pn


def boundary_masses(mix: BinomialMixture) -> tuple[float, float]:
    """Exact (P(S=0), P(S=N)) as products of per-component boundary terms."""
    log_p0, log_pn = log_boundary_masses(mix)
    return math.exp(log_p0), math.exp(log_pn)


def _log_first_order(root: SaddlepointRoot, s: float) -> float:
    r = root.root
    return r.k - r.u * s - LOG_SQRT_2PI - 0.5 * math.log(r.k2)


def correction_factor(root: SaddlepointRoot) -> float:
    """Second-order multiplier 1 + K''''/(8 K''^2) - 5 K'''^2 / (24 K''^3)."""
    r = root.root
    return 1.0 + r.k4 / (8.0 * r.k2**2) - 5.0 * r.k3**2 / (24.0 * r.k2**3)


def density_first_order(root: SaddlepointRoot, s: int) -> float:
    """exp(K(u) - u s) / sqrt(2 pi K''(u)) at the root solved for ``s``."""
    return math.exp(_log_first_order(root, s))


def _log_second_order(root: SaddlepointRoot, s: int) -> float:
    factor = correction_factor(root)
    if factor <= 0.0:
        return -math.inf
    return _log_first_order(root, s) + math.log(factor)


def density_second_order(root: SaddlepointRoot, s: int) -> float:
    """First-order density times the correction factor, clamped below at 0."""
    return math.exp(_log_second_order(root, s))


def _interior_log_density(cgf: CgfEvaluator, total: int) -> np.ndarray:
    out = np.empty(total - 1)
    guess = None
    for i, s in enumerate(range(1, total)):
        root = solve(cgf, s, guess)
        out[i] = _log_second_order(root, s)
        guess = root.u
    return out


def _active_table(mix: BinomialMixture) -> np.ndarray:
    total = mix.total
    p0, pn = boundary_masses(mix)
    mass = np.zeros(total + 1)
    mass[0], mass[total] = p0, pn
    remaining = 1.0 - p0 - pn
    if total == 2:
        mass[1] = remaining
    elif total > 2:
        logs = _interior_log_density(CgfEvaluator(mix), total)
        mass[1:total] = remaining * np.exp(logs - logsumexp(logs))
    return mass


@lru_cache(maxsize=64)
def pmf_table(mix: BinomialMixture) -> PmfTable:
    """Full-support PMF of the mixture, cached per mixture.

    Components with p=0 or p=1 are split off first; the saddlepoint table
    of the remaining components is shifted by the p=1 trial count. An
    all-degenerate mixture yields a point mass.
    """
    split = split_degenerate(mix)
    mass = np.zeros(mix.total + 1)
    if split.active is None:
        mass[split.offset] = 1.0
    else:
        active = _active_table(split.active)
        mass[split.offset : split.offset + len(active)] = active
    return PmfTable(np.arange(mix.total + 1), mass)


def pmf_at(mix: BinomialMixture, x, log_scale: bool = False) -> np.ndarray:
    """Look up P(S = x) for each x; values outside 0..N have mass 0."""
    table = pmf_table(mix)
    x = np.atleast_1d(np.asarray(x))
    xi = np.floor(x).astype(np.int64) if x.dtype.kind == "f" else x.astype(np.int64)
    inside = (xi >= 0) & (xi <= table.total) & (xi == x)
    out = np.zeros(x.shape)
    out[inside] = table.mass[xi[inside]]
    if log_scale:
        with np.errstate(divide="ignore"):
            return np.log(out)
    return out
