"""
Brute-force cross-checks that share no code with the graph construction.

``brute_count`` enumerates binary words digit by digit and follows, for every
start position, whether the suffix read so far is still tied with the floor
or with delta(beta). A start that drops below the floor or rises above delta
kills the word. Offsets into an eventually periodic sequence repeat, so the
tie sets live in a finite automaton and "some infinite continuation exists"
is decided exactly on it.

``orbit_survives`` iterates the beta-transformation in exact arithmetic.
"""

import logging
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .core.errors import BetaDomainError
from .core.expansion import t_step
from .core.field import FieldElement, MultinacciBeta
from .core.primitives import TruncatedWord
from .core.symbolic import EPSequence

logger = logging.getLogger(__name__)

MAX_BRUTE_LENGTH = 24

# (offsets tied with the floor, offsets tied with delta)
TieState = Tuple[FrozenSet[int], FrozenSet[int]]


def _canonical_offset(offset: int, seq: EPSequence) -> int:
    u = len(seq.preperiod)
    if offset < u:
        return offset
    return u + (offset - u) % len(seq.period)


def _advance(state: TieState, digit: int, lower: EPSequence, upper: EPSequence) -> Optional[TieState]:
    """Read one digit; None when some start position leaves the band."""
    low_ties, high_ties = state
    next_low: Set[int] = set()
    for offset in low_ties | {0}:
        bound = lower.digit(offset)
        if digit < bound:
            return None
        if digit == bound:
            next_low.add(_canonical_offset(offset + 1, lower))
    next_high: Set[int] = set()
    for offset in high_ties | {0}:
        bound = upper.digit(offset)
        if digit > bound:
            return None
        if digit == bound:
            next_high.add(_canonical_offset(offset + 1, upper))
    return frozenset(next_low), frozenset(next_high)


def _live_states(start: TieState, lower: EPSequence, upper: EPSequence) -> Set[TieState]:
    """Reachable tie states from which some infinite continuation exists."""
    successors: Dict[TieState, List[TieState]] = {}
    frontier = [start]
    while frontier:
        state = frontier.pop()
        if state in successors:
            continue
        nxt = [s for s in (_advance(state, d, lower, upper) for d in (0, 1)) if s is not None]
        successors[state] = nxt
        frontier.extend(s for s in nxt if s not in successors)

    live = set(successors)
    changed = True
    while changed:
        changed = False
        for state in list(live):
            if not any(s in live for s in successors[state]):
                live.discard(state)
                changed = True
    return live


def brute_count(lower: EPSequence, beta: MultinacciBeta, n: int) -> int:
    """
    Number of length-n words that begin some x with
    ``lower <= sigma^j(x) <= delta(beta)`` for every j.

    Raises:
        BetaDomainError: ``n`` outside ``1..MAX_BRUTE_LENGTH`` or a floor
            that is not eventually periodic.
    """
    if isinstance(lower, TruncatedWord) or not isinstance(lower, EPSequence):
        raise BetaDomainError(f"Brute count needs an eventually periodic floor, got {lower!r}")
    if not 1 <= n <= MAX_BRUTE_LENGTH:
        raise BetaDomainError(f"Brute count supports 1 <= n <= {MAX_BRUTE_LENGTH}, got {n}")

    upper = beta.delta
    start: TieState = (frozenset(), frozenset())
    live = _live_states(start, lower, upper)

    count = 0
    stack: List[Tuple[int, TieState]] = [(0, start)]
    while stack:
        length, state = stack.pop()
        if length == n:
            count += 1
            continue
        for digit in (0, 1):
            nxt = _advance(state, digit, lower, upper)
            if nxt is not None and nxt in live:
                stack.append((length + 1, nxt))
    logger.debug("Brute count over %s for %s: n=%d -> %d (%d live tie states)",
                 beta.label, lower, n, count, len(live))
    return count


def orbit_survives(x: FieldElement, t: FieldElement, beta: MultinacciBeta, n: int) -> bool:
    """True iff ``T^j(x) >= t`` for ``0 <= j <= n``, in exact arithmetic."""
    for value in (x, t):
        if value.beta != beta:
            raise BetaDomainError(f"Point of {value.beta.label} used with {beta.label}")
    for name, value in (("Point", x), ("Hole edge", t)):
        if value.sign() < 0 or value >= 1:
            raise BetaDomainError(f"{name} must lie in [0, 1), got {value}")
    if n < 0:
        raise BetaDomainError(f"Step count must be nonnegative, got {n}")
    point = x
    for _ in range(n + 1):
        if point < t:
            return False
        point = t_step(point)[1]
    return True
