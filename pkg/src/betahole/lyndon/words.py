"""
Word-level predicates and the prefix search behind Lyndon enumeration.

The search is the Fredricksen-Kessler-Maiorana walk over prenecklaces that
start with 0: a node carries the length ``p`` of its longest Lyndon prefix
period, children may only use digits ``>= word[n - p]``, and a node is a
(classical) Lyndon word exactly when ``p == n``. Nodes whose suffixes already
exceed the matching prefix of delta(beta) are cut, which for multinacci bases
is the same as cutting every prefix containing 1^{m+1}.
"""

import logging
from typing import List, Tuple

from ..core.errors import BetaDomainError, HypothesisViolation
from ..core.expansion import is_greedy_admissible
from ..core.field import MultinacciBeta
from ..core.symbolic import EPSequence, WordLike, as_digits

logger = logging.getLogger(__name__)

# (word, length of its longest Lyndon-prefix period)
SearchNode = Tuple[str, int]


def _suffixes_exceed_prefixes(word: str) -> bool:
    n = len(word)
    return all(word[i:] > word[: n - i] for i in range(1, n))


def is_lyndon_word(word: WordLike, beta: MultinacciBeta) -> bool:
    """
    True iff ``word`` is beta-Lyndon.

    Every proper suffix must be strictly greater than the prefix of the same
    length, and every shift of ``word^inf`` must lie strictly below delta(beta).
    """
    w = as_digits(word)
    if not w:
        raise BetaDomainError("Lyndon check needs a nonempty word")
    if not _suffixes_exceed_prefixes(w):
        return False
    return is_greedy_admissible(EPSequence.periodic(w), beta)


def check_suffix_inequality(s: EPSequence) -> bool:
    """
    Suffix property of shift-minimal periodic sequences.

    For ``s = (t_1 ... t_N)^inf`` with primitive period N >= 2 and
    ``sigma^n(s) >= s`` for all n, every proper suffix of the period word
    strictly exceeds the prefix of the same length.

    Raises:
        HypothesisViolation: s is not purely periodic, has period 1, or is
            not minimal in its shift orbit.
    """
    if not s.is_purely_periodic:
        raise HypothesisViolation(f"{s} is not purely periodic")
    if len(s.period) < 2:
        raise HypothesisViolation(f"{s} has period {len(s.period)}, need at least 2")
    for n, shifted in enumerate(s.distinct_shifts()):
        if shifted < s:
            raise HypothesisViolation(f"sigma^{n}({s}) = {shifted} lies below {s}")
    return _suffixes_exceed_prefixes(s.period)


# ============================================================================
# Prenecklace search
# ============================================================================

def _exceeds_ceiling(word: str, ceiling: str) -> bool:
    """Some suffix of ``word`` is already above the same-length prefix of delta."""
    n = len(word)
    return any(word[i:] > ceiling[: n - i] for i in range(n))


def _children(node: SearchNode, ceiling: str) -> List[SearchNode]:
    word, period = node
    n = len(word)
    if n == 0:
        return [("0", 1)]
    out = []
    ref = word[n - period]
    for digit in "01":
        if digit < ref:
            continue
        child = word + digit
        if _exceeds_ceiling(child, ceiling):
            continue
        out.append((child, period if digit == ref else n + 1))
    return out


def search_words(
    beta: MultinacciBeta,
    max_len: int,
    root: SearchNode = ("", 0),
    include_root: bool = True,
) -> List[str]:
    """
    Depth-first scan for beta-Lyndon words of length 2..max_len below ``root``.

    The degenerate word "0" is never emitted. Output order is search order;
    callers sort.
    """
    ceiling = beta.delta.prefix(max_len)
    found: List[str] = []
    stack: List[SearchNode] = [root]
    while stack:
        node = stack.pop()
        word, period = node
        n = len(word)
        if n > 1 and period == n and (include_root or node != root):
            if is_greedy_admissible(EPSequence.periodic(word), beta):
                found.append(word)
        if n < max_len:
            stack.extend(reversed(_children(node, ceiling)))
    return found


def search_frontier(beta: MultinacciBeta, split_len: int) -> Tuple[List[str], List[SearchNode]]:
    """
    Split the search at ``split_len``.

    Returns the Lyndon words of length <= split_len together with the live
    search nodes of length exactly split_len, from which workers continue.
    """
    ceiling = beta.delta.prefix(split_len)
    words: List[str] = []
    frontier: List[SearchNode] = []
    stack: List[SearchNode] = [("", 0)]
    while stack:
        node = stack.pop()
        word, period = node
        n = len(word)
        if n > 1 and period == n and is_greedy_admissible(EPSequence.periodic(word), beta):
            words.append(word)
        if n == split_len:
            frontier.append(node)
        else:
            stack.extend(reversed(_children(node, ceiling)))
    return words, frontier
