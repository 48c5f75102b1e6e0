"""
Betahole Lyndon Module.

beta-Lyndon words and the intervals they generate:
1. Words (predicate, suffix property, prenecklace search)
2. Intervals (exact endpoints, enumeration, disjointness and coverage audits)
"""

from .words import check_suffix_inequality, is_lyndon_word
from .intervals import (
    DEFAULT_DEPTH,
    DisjointnessReport,
    LyndonInterval,
    coverage_measure,
    enumerate_lyndon,
    lyndon_catalog,
    make_interval,
    verify_disjoint,
)

__all__ = [
    "check_suffix_inequality", "is_lyndon_word",
    "DEFAULT_DEPTH", "DisjointnessReport", "LyndonInterval", "coverage_measure",
    "enumerate_lyndon", "lyndon_catalog", "make_interval", "verify_disjoint",
]
