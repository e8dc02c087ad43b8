"""Root finding for the saddlepoint equation K'(u) = t."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cgf import CgfDerivatives, CgfEvaluator
from .model import BinomialMixture

MAX_ITER = 200
EDGE_MARGIN = 1e-9


class SolverError(RuntimeError):
    """The iteration budget ran out. This indicates a numerics bug, not bad input."""


@dataclass(frozen=True)
class SaddlepointRoot:
    target: float
    root: CgfDerivatives
    iterations: int
    residual: float

    @property
    def u(self) -> float:
        return self.root.u


def tolerance(total: float) -> float:
    return max(1e-12 * total, 1e-12)


def _bracket(cgf: CgfEvaluator, t: float) -> tuple[float, float]:
    # K' is increasing with limits 0 and N, so doubling steps must straddle t.
    if t >= cgf.mean:
        lo, step = 0.0, 1.0
        while cgf.slope(step)[0] < t:
            lo, step = step, 2.0 * step
        return lo, step
    hi, step = 0.0, -1.0
    while cgf.slope(step)[0] > t:
        hi, step = step, 2.0 * step
    return step, hi


def solve(cgf: CgfEvaluator, t: float, guess: float | None = None) -> SaddlepointRoot:
    """Safeguarded Newton iteration on an evaluator; see :func:`solve_saddlepoint`."""
    t = float(t)
    total = cgf.total
    if not (EDGE_MARGIN < t < total - EDGE_MARGIN):
        raise ValueError(f"target {t} is outside the open interval (0, {total:g})")
    tol = tolerance(total)

    if t == cgf.mean:
        return SaddlepointRoot(t, cgf(0.0), 0, 0.0)

    lo, hi = _bracket(cgf, t)
    u = (t - cgf.mean) / cgf.variance if guess is None else float(guess)
    if not lo < u < hi:
        u = 0.5 * (lo + hi)

    for it in range(1, MAX_ITER + 1):
        k1, k2 = cgf.slope(u)
        f = k1 - t
        if abs(f) <= tol:
            # one more Newton step is nearly free and usually lands on the last ulp
            polished = u - f / k2 if k2 > 0 else u
            f_polished = cgf.slope(polished)[0] - t
            if abs(f_polished) < abs(f):
                u, f = polished, f_polished
            return SaddlepointRoot(t, cgf(u), it, abs(f))
        if f > 0:
            hi = u
        else:
            lo = u
        step_u = u - f / k2 if k2 > 0 else math.nan
        if not lo < step_u < hi:
            step_u = 0.5 * (lo + hi)
        if step_u == u or hi - lo <= 4 * math.ulp(max(abs(lo), abs(hi))):
            # bracket collapsed to adjacent floats; this is the best double available
            k1, _ = cgf.slope(step_u)
            if abs(k1 - t) <= tol:
                return SaddlepointRoot(t, cgf(step_u), it, abs(k1 - t))
            break
        u = step_u
    raise SolverError(f"saddlepoint iteration did not converge for target {t}")


def solve_saddlepoint(
    mix: BinomialMixture, t: float, guess: float | None = None
) -> SaddlepointRoot:
    """Find the unique u with K'(u) = t, for 0 < t < N.

    Newton steps are kept inside a bracket that shrinks every iteration, with
    bisection whenever a step would leave it. ``guess`` warm-starts the
    iteration (for instance with the root for a neighbouring target).

    Raises ValueError for targets within 1e-9 of 0 or N; those endpoints
    carry exact masses and never need a saddlepoint.
    """
    return solve(CgfEvaluator(mix), t, guess)
