"""
Betahole Dynamics Module.

The open system with a hole [0, t):
1. SFT (survivor graph, block counts, language equality)
2. Spectral (components, certified Perron roots, entropy)
3. Bifurcation (membership, dimension function, experiments)
"""

from .sft import (
    SurvivorSFT,
    build_survivor_sft,
    count_blocks,
    is_transitive,
    language_blocks,
    sft_equal,
)
from .spectral import DEFAULT_TOL, entropy_eigvals, entropy_spectral, strongly_connected_components
from .bifurcation import (
    AboveThreshold,
    Found,
    NotCoveredAtDepth,
    StaircaseRow,
    SupReport,
    dimension,
    in_B,
    in_B_prime,
    in_E,
    in_E_prime,
    local_dimension_profile,
    locate_interval,
    staircase,
    sup_E,
    tail_dimension,
)

__all__ = [
    "SurvivorSFT", "build_survivor_sft", "count_blocks", "is_transitive",
    "language_blocks", "sft_equal",
    "DEFAULT_TOL", "entropy_eigvals", "entropy_spectral", "strongly_connected_components",
    "AboveThreshold", "Found", "NotCoveredAtDepth", "StaircaseRow", "SupReport",
    "dimension", "in_B", "in_B_prime", "in_E", "in_E_prime",
    "local_dimension_profile", "locate_interval", "staircase", "sup_E", "tail_dimension",
]
