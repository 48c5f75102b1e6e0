"""
Betahole Core Module.

Exact foundations shared by every higher layer:
1. Field (Q(beta) arithmetic with certified signs)
2. Symbolic (binary words and eventually periodic sequences)
3. Expansion (greedy / quasi-greedy digits, evaluation, Parry checks)
4. Primitives and errors (value types, exception hierarchy)
"""

from .errors import BetaDomainError, HypothesisViolation, InvariantViolation
from .field import (
    MULTINACCI,
    SPARSE,
    TWO,
    FieldElement,
    MultinacciBeta,
    fe_arith,
    fe_sign,
    make_beta,
)
from .primitives import (
    DimensionEstimate,
    EntropyBound,
    EstimateMethod,
    MembershipResult,
    Ordering,
    Sign,
    TruncatedWord,
    Verdict,
)
from .symbolic import BinaryWord, EPSequence, distinct_shifts, lex_cmp, reflect, shift
from .expansion import (
    DEFAULT_HORIZON,
    eval_expansion,
    greedy_expand,
    greedy_expand_unit,
    is_delta_valid,
    is_greedy_admissible,
    parse_value,
    quasi_greedy_expand,
    t_map,
    t_step,
)

__all__ = [
    "BetaDomainError", "HypothesisViolation", "InvariantViolation",
    "MULTINACCI", "SPARSE", "TWO", "FieldElement", "MultinacciBeta",
    "fe_arith", "fe_sign", "make_beta",
    "DimensionEstimate", "EntropyBound", "EstimateMethod", "MembershipResult",
    "Ordering", "Sign", "TruncatedWord", "Verdict",
    "BinaryWord", "EPSequence", "distinct_shifts", "lex_cmp", "reflect", "shift",
    "DEFAULT_HORIZON", "eval_expansion", "greedy_expand", "greedy_expand_unit",
    "is_delta_valid", "is_greedy_admissible", "parse_value", "quasi_greedy_expand",
    "t_map", "t_step",
]
