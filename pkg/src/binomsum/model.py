"""The binomial-mixture model: S = X_1 + ... + X_m with X_i ~ Binomial(n_i, p_i)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np


class MixtureError(ValueError):
    """Raised when trial counts or probabilities do not describe a valid mixture."""


@dataclass(frozen=True)
class BinomialMixture:
    """Paired trial counts and success probabilities.

    Instances are immutable and hashable, so derived tables can be cached
    against them. Build through :func:`new_mixture` to get broadcasting and
    validation.
    """

    sizes: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        _validate(self.sizes, self.probs)

    @property
    def m(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        """Largest attainable value of the sum, N = sum of n_i."""
        return sum(self.sizes)

    def size_array(self) -> np.ndarray:
        return np.asarray(self.sizes, dtype=float)

    def prob_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    def mean(self) -> float:
        return mean(self)

    def variance(self) -> float:
        return variance(self)


@dataclass(frozen=True)
class DegenerateSplit:
    """A mixture with its p=0 and p=1 components separated out.

    ``active`` is None when every component was degenerate; the sum is then
    the constant ``offset``.
    """

    active: BinomialMixture | None
    offset: int
    dropped: int = 0

    @property
    def total(self) -> int:
        active = self.active.total if self.active is not None else 0
        return self.offset + active + self.dropped


def _as_list(values, kind) -> list:
    if isinstance(values, (str, bytes)):
        raise MixtureError(f"{kind} must be numeric, got {values!r}")
    if np.isscalar(values):
        return [values]
    if isinstance(values, np.ndarray):
        return values.ravel().tolist()
    return list(values)


def _validate(sizes: Sequence[int], probs: Sequence[float]) -> None:
    if len(sizes) == 0 or len(probs) == 0:
        raise MixtureError("sizes and probs must be non-empty")
    if len(sizes) != len(probs):
        raise MixtureError(
            f"sizes and probs have lengths {len(sizes)} and {len(probs)}; "
            "they must match or one of them must have length 1"
        )
    for n in sizes:
        if not isinstance(n, int) or isinstance(n, bool):
            raise MixtureError(f"size {n!r} is not an integer")
        if n < 1:
            raise MixtureError(f"size {n} must be a positive integer")
    for p in probs:
        if not (isinstance(p, float) and 0.0 <= p <= 1.0):
            raise MixtureError(f"probability {p!r} is outside [0, 1]")


def _to_int(value) -> int:
    if isinstance(value, (bool, np.bool_)):
        raise MixtureError(f"size {value!r} is not an integer")
    if isinstance(value, (int, np.integer)):
        return int(value)
    try:
        as_float = float(value)
    except (TypeError, ValueError):
        raise MixtureError(f"size {value!r} is not an integer") from None
    if not math.isfinite(as_float) or as_float != int(as_float):
        raise MixtureError(f"size {value!r} is not an integer")
    return int(as_float)


def _to_prob(value) -> float:
    try:
        p = float(value)
    except (TypeError, ValueError):
        raise MixtureError(f"probability {value!r} is not a number") from None
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise MixtureError(f"probability {value!r} is outside [0, 1]")
    return p


def new_mixture(
    sizes: Union[int, Iterable[int]], probs: Union[float, Iterable[float]]
) -> BinomialMixture:
    """Validate and build a mixture, broadcasting a length-1 argument.

    Any length mismatch other than 1-against-k is an error; values are never
    recycled.

    >>> new_mixture([10, 100], [0.5]).probs
    (0.5, 0.5)
    """
    size_list = [_to_int(n) for n in _as_list(sizes, "sizes")]
    prob_list = [_to_prob(p) for p in _as_list(probs, "probs")]
    if not size_list or not prob_list:
        raise MixtureError("sizes and probs must be non-empty")
    if len(size_list) != len(prob_list):
        if len(size_list) == 1:
            size_list = size_list * len(prob_list)
        elif len(prob_list) == 1:
            prob_list = prob_list * len(size_list)
    return BinomialMixture(tuple(size_list), tuple(prob_list))


def split_degenerate(mix: BinomialMixture) -> DegenerateSplit:
    """Drop p=0 components and fold p=1 components into a constant offset."""
    sizes, probs = [], []
    offset = dropped = 0
    for n, p in zip(mix.sizes, mix.probs):
        if p == 0.0:
            dropped += n
        elif p == 1.0:
            offset += n
        else:
            sizes.append(n)
            probs.append(p)
    active = BinomialMixture(tuple(sizes), tuple(probs)) if sizes else None
    return DegenerateSplit(active, offset, dropped)


def mean(mix: BinomialMixture) -> float:
    return float(np.dot(mix.size_array(), mix.prob_array()))


def variance(mix: BinomialMixture) -> float:
    p = mix.prob_array()
    return float(np.dot(mix.size_array(), p * (1.0 - p)))


def concat(*mixtures: BinomialMixture) -> BinomialMixture:
    """Mixture of the sum of independent sums."""
    sizes: tuple[int, ...] = ()
    probs: tuple[float, ...] = ()
    for mix in mixtures:
        sizes += mix.sizes
        probs += mix.probs
    return BinomialMixture(sizes, probs)


HEALTHCARE_SIZES = (12, 14, 4, 2, 20, 17, 11, 1, 8, 11)
HEALTHCARE_PROBS = (0.074, 0.039, 0.095, 0.039, 0.053, 0.043, 0.067, 0.018, 0.099, 0.045)


def healthcare_mixture() -> BinomialMixture:
    """Bundle-compliance monitoring mixture used in the accuracy and timing studies."""
    return new_mixture(HEALTHCARE_SIZES, HEALTHCARE_PROBS)
