"""Distribution of a sum of independent, non-identical binomial random variables.

The PMF and CDF come from a second-order saddlepoint approximation; an exact
convolution oracle and a Monte Carlo sampler are provided for validation.
"""

from .cgf import CgfDerivatives, eval_cgf
from .density import PmfTable, boundary_masses, pmf_at, pmf_table
from .model import BinomialMixture, DegenerateSplit, MixtureError, new_mixture, split_degenerate
from .oracle import GuardExceeded, empirical_pmf, exact_pmf, sample
from .quantile import QuantileQuery, quantile, random
from .solver import SaddlepointRoot, SolverError, solve_saddlepoint
from .tail import Branch, TailResult, cdf_at, survival

__all__ = [
    "BinomialMixture", "Branch", "CgfDerivatives", "DegenerateSplit", "GuardExceeded",
    "MixtureError", "PmfTable", "QuantileQuery", "SaddlepointRoot", "SolverError",
    "TailResult", "boundary_masses", "cdf_at", "empirical_pmf", "eval_cgf", "exact_pmf",
    "new_mixture", "pmf_at", "pmf_table", "quantile", "random", "sample",
    "solve_saddlepoint", "split_degenerate", "survival",
]
