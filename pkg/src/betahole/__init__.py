"""
betahole: bifurcation sets of beta-transformations with a hole.

For the multinacci bases (golden ratio, tribonacci, ...) and beta = 2, the
package decides exactly which hole positions t change the survivor set
``{x : T^n(x) >= t for all n}``, enumerates the beta-Lyndon intervals on which
it stays constant, and computes the dimension of the survivor set with
certified brackets.

Quick Start:
    >>> from betahole import make_beta, parse_value, in_B, dimension
    >>>
    >>> beta = make_beta(1)                      # golden ratio
    >>> t = parse_value("1/4", beta)
    >>> in_B(t, beta).verdict.value
    'nonmember'
    >>> round(dimension(t, beta).value, 4)       # log(rho)/log(beta), rho^3 = rho + 1
    0.5844

Features:
    - Exact arithmetic in Q(beta) with certified signs
    - Eventually periodic sequences in canonical form
    - Prefix-partitioned Lyndon enumeration on worker threads
    - Survivor graphs with certified Perron-root entropy
    - Brute-force oracle for independent cross-checks
"""

from .core import (
    TWO,
    BetaDomainError,
    EPSequence,
    FieldElement,
    HypothesisViolation,
    InvariantViolation,
    MultinacciBeta,
    eval_expansion,
    greedy_expand,
    make_beta,
    parse_value,
    quasi_greedy_expand,
)
from .lyndon import enumerate_lyndon, is_lyndon_word, make_interval, verify_disjoint
from .dynamics import (
    build_survivor_sft,
    count_blocks,
    dimension,
    entropy_spectral,
    in_B,
    in_E,
    locate_interval,
    staircase,
    sup_E,
)
from .oracle import brute_count, orbit_survives

__version__ = "0.1.0"

__all__ = [
    # Core
    "TWO",
    "BetaDomainError",
    "HypothesisViolation",
    "InvariantViolation",
    "EPSequence",
    "FieldElement",
    "MultinacciBeta",
    "eval_expansion",
    "greedy_expand",
    "make_beta",
    "parse_value",
    "quasi_greedy_expand",
    # Lyndon
    "enumerate_lyndon",
    "is_lyndon_word",
    "make_interval",
    "verify_disjoint",
    # Dynamics
    "build_survivor_sft",
    "count_blocks",
    "dimension",
    "entropy_spectral",
    "in_B",
    "in_E",
    "locate_interval",
    "staircase",
    "sup_E",
    # Oracle
    "brute_count",
    "orbit_survives",
]


def get_version() -> str:
    """Return the package version."""
    return __version__


def check_numpy() -> dict:
    """
    Report the numeric backend used for power iteration.

    Returns:
        Dict with the numpy version and whether float64 bincount is available
    """
    try:
        import numpy as np
    except ImportError:
        return {"numpy": None, "available": False}
    return {"numpy": np.__version__, "available": hasattr(np, "bincount")}
