"""
beta-Lyndon intervals: construction, enumeration and auditing.

A beta-Lyndon word s of length p owns the interval
``[t_L, t_R) = [(s 0^inf)_beta, (s^inf)_beta)`` with
``t_R = t_L * beta^p / (beta^p - 1)``. Enumeration returns the nondegenerate
intervals up to a word length, sorted by left endpoint.
"""

import dataclasses
import functools
import logging
from typing import List, Optional, Sequence, Tuple

from ..concurrency.pipeline import run_partitioned
from ..core.errors import BetaDomainError, InvariantViolation
from ..core.expansion import eval_expansion, word_value
from ..core.field import FieldElement, MultinacciBeta
from ..core.symbolic import EPSequence, WordLike, as_digits
from .words import SearchNode, is_lyndon_word, search_frontier, search_words

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 12

# Prefix length at which a parallel search is split into worker jobs.
_SPLIT_LEN = 6


@dataclasses.dataclass(slots=True, frozen=True)
class LyndonInterval:
    word: str
    t_left: FieldElement
    t_right: FieldElement

    @property
    def beta(self) -> MultinacciBeta:
        return self.t_left.beta

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_degenerate(self) -> bool:
        return self.t_left == self.t_right

    @property
    def width(self) -> FieldElement:
        return self.t_right - self.t_left

    def contains(self, t: FieldElement, closed: bool = False) -> bool:
        if t < self.t_left:
            return False
        return t <= self.t_right if closed else t < self.t_right

    def floor_sequence(self) -> EPSequence:
        """``s 0^inf``, the expansion of the left endpoint."""
        return EPSequence.finite(self.word)

    def periodic_sequence(self) -> EPSequence:
        """``s^inf``, the expansion of the right endpoint."""
        return EPSequence.periodic(self.word)


@functools.lru_cache(maxsize=1024)
def _geometric_scale(beta: MultinacciBeta, p: int) -> FieldElement:
    bp = beta.gen ** p
    return bp / (bp - 1)


def make_interval(word: WordLike, beta: MultinacciBeta) -> LyndonInterval:
    """
    Exact endpoints of the interval generated by a beta-Lyndon word.

    Raises:
        BetaDomainError: ``word`` is not beta-Lyndon.
        InvariantViolation: the scaled left endpoint disagrees with the
            value of ``word^inf``.
    """
    w = as_digits(word)
    if not is_lyndon_word(w, beta):
        raise BetaDomainError(f"{w!r} is not a beta-Lyndon word for {beta.label}")
    t_left = word_value(w, beta)
    t_right = eval_expansion(EPSequence.periodic(w), beta)
    if t_left * _geometric_scale(beta, len(w)) != t_right:
        raise InvariantViolation(f"Endpoint formulas disagree for {w!r}")
    return LyndonInterval(w, t_left, t_right)


def _sort_key(word: str, width: int) -> str:
    # Left endpoints have expansions w 0^inf and the greedy map is increasing,
    # so zero-padded words sort exactly like t_L.
    return word.ljust(width, "0")


def _search_job(payload: Tuple[MultinacciBeta, int, SearchNode]) -> List[str]:
    beta, max_len, node = payload
    return search_words(beta, max_len, root=node, include_root=False)


def _find_words(beta: MultinacciBeta, max_len: int, jobs: int) -> List[str]:
    if jobs <= 1 or max_len <= _SPLIT_LEN:
        return search_words(beta, max_len)
    words, frontier = search_frontier(beta, _SPLIT_LEN)
    payloads = [(beta, max_len, node) for node in frontier]
    for chunk in run_partitioned(_search_job, payloads, jobs):
        words.extend(chunk)
    return words


def enumerate_lyndon(beta: MultinacciBeta, max_len: int = DEFAULT_DEPTH, jobs: int = 1) -> List[LyndonInterval]:
    """
    All nondegenerate beta-Lyndon intervals with word length <= ``max_len``.

    Args:
        beta: Base.
        max_len: Depth L of the search.
        jobs: Worker threads; the search is split on word prefixes and the
            result is identical for every value.

    Returns:
        Intervals sorted by left endpoint.
    """
    if max_len < 1:
        raise BetaDomainError(f"Enumeration depth must be positive, got {max_len}")
    if jobs <= 1:
        return list(lyndon_catalog(beta, max_len))
    return _build_catalog(beta, max_len, jobs)


@functools.lru_cache(maxsize=64)
def lyndon_catalog(beta: MultinacciBeta, max_len: int) -> Tuple[LyndonInterval, ...]:
    """Cached serial enumeration shared by the bifurcation routines."""
    return tuple(_build_catalog(beta, max_len, 1))


def _build_catalog(beta: MultinacciBeta, max_len: int, jobs: int) -> List[LyndonInterval]:
    words = sorted(set(_find_words(beta, max_len, jobs)), key=lambda w: _sort_key(w, max_len))
    intervals = [make_interval(w, beta) for w in words]
    logger.info("Enumerated %d Lyndon intervals for %s at depth %d", len(intervals), beta.label, max_len)
    return intervals


# ============================================================================
# Audits
# ============================================================================

@dataclasses.dataclass(slots=True, frozen=True)
class DisjointnessReport:
    disjoint: bool
    offending: Optional[Tuple[LyndonInterval, LyndonInterval]] = None

    def __bool__(self) -> bool:
        return self.disjoint


def verify_disjoint(ivs: Sequence[LyndonInterval], closed: bool = False) -> DisjointnessReport:
    """
    Pairwise disjointness via consecutive pairs after sorting by ``t_left``.

    Half-open intervals may touch (``t_right <= next.t_left``); closed ones
    may not (``t_right < next.t_left``).
    """
    ordered = sorted(ivs, key=functools.cmp_to_key(lambda a, b: int(a.t_left.compare(b.t_left))))
    for left, right in zip(ordered, ordered[1:]):
        ok = left.t_right < right.t_left if closed else left.t_right <= right.t_left
        if not ok:
            return DisjointnessReport(False, (left, right))
    return DisjointnessReport(True)


def coverage_measure(ivs: Sequence[LyndonInterval], beta: MultinacciBeta) -> FieldElement:
    """Exact total length of the (pairwise disjoint) intervals."""
    total = beta.zero
    for iv in ivs:
        total = total + iv.width
    return total
