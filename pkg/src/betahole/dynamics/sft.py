"""
The survivor subshift as a finite graph.

For a floor sequence ``lower`` the survivor shift is the set of binary
sequences x with ``lower <= sigma^n(x) <= delta(beta)`` for every n. With a
window length k at least the floor's length p and at least the orbit length of
delta, the shift is described by k-blocks: a block c is admissible iff
``lower[:k] <= c <= delta[:k]``. The graph has the (k-1)-blocks all of whose
suffixes fit between the two bounds as vertices and an edge ``u -> v`` for
every admissible k-block ``u + v[-1]``.

Two pruned views are kept:
    - live: vertices with an infinite forward walk. Its path labels are the
      one-sided language, used for block counts.
    - essential: additionally every vertex has an incoming edge. Used for
      entropy and transitivity.
"""

import dataclasses
import logging
from typing import Dict, FrozenSet, List, Sequence, Set, Tuple, Union

from ..core.errors import BetaDomainError
from ..core.field import MultinacciBeta
from ..core.primitives import TruncatedWord
from ..core.symbolic import EPSequence
from .spectral import strongly_connected_components

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclasses.dataclass(slots=True, frozen=True)
class SurvivorSFT:
    """
    Immutable survivor graph.

    ``states``/``edges`` are the essential graph; ``live_states``/``live_edges``
    the graph pruned of dead ends only. Edges are index pairs into the
    matching state tuple, states are sorted lexicographically.
    """
    block_len: int
    states: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    lower: EPSequence
    beta: MultinacciBeta
    exact: bool = True
    live_states: Tuple[str, ...] = ()
    live_edges: Tuple[Edge, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.live_states

    def successors(self) -> List[List[int]]:
        """Adjacency lists of the essential graph."""
        succ: List[List[int]] = [[] for _ in self.states]
        for i, j in self.edges:
            succ[i].append(j)
        return succ

    def to_dot(self) -> str:
        """Graphviz rendering of the essential graph; edge labels are the appended digit."""
        lines = [
            "digraph survivor {",
            f'  label="{self.beta.label} lower={self.lower} k={self.block_len}";',
        ]
        for state in self.states:
            lines.append(f'  "{state}";')
        for i, j in sorted(self.edges):
            lines.append(f'  "{self.states[i]}" -> "{self.states[j]}" [label="{self.states[j][-1]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ============================================================================
# Construction
# ============================================================================

def floor_length(lower: EPSequence) -> Tuple[int, bool]:
    """
    Window length p demanded by the floor, and whether k-blocks describe it exactly.

    ``s 0^inf`` needs ``|s|`` and ``s^inf`` needs ``|s|``; any other floor is
    cut at its orbit length and only bounds the shift from outside.
    """
    if lower.ends_in_zeros:
        return max(len(lower.preperiod), 1), True
    if lower.is_purely_periodic:
        return len(lower.period), True
    return lower.orbit_length, False


def _fits(word: str, lo: str, hi: str) -> bool:
    n = len(word)
    return all(lo[: n - i] <= word[i:] <= hi[: n - i] for i in range(n))


def _vertex_words(width: int, lo: str, hi: str) -> List[str]:
    # Fitting words are closed under prefixes, so the search prunes early.
    out: List[str] = []
    stack = [""]
    while stack:
        word = stack.pop()
        if len(word) == width:
            out.append(word)
            continue
        for digit in "10":
            child = word + digit
            if _fits(child, lo, hi):
                stack.append(child)
    out.sort()
    return out


def _prune(
    states: Sequence[str],
    edges: Sequence[Edge],
    sources: bool,
) -> Tuple[Tuple[str, ...], Tuple[Edge, ...]]:
    """Repeatedly drop vertices without outgoing (and optionally incoming) edges."""
    alive = set(range(len(states)))
    out_deg = [0] * len(states)
    in_deg = [0] * len(states)
    succ: List[List[int]] = [[] for _ in states]
    pred: List[List[int]] = [[] for _ in states]
    for i, j in edges:
        out_deg[i] += 1
        in_deg[j] += 1
        succ[i].append(j)
        pred[j].append(i)

    queue = [v for v in alive if out_deg[v] == 0 or (sources and in_deg[v] == 0)]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for u in pred[v]:
            if u in alive:
                out_deg[u] -= 1
                if out_deg[u] == 0:
                    queue.append(u)
        for w in succ[v]:
            if w in alive:
                in_deg[w] -= 1
                if sources and in_deg[w] == 0:
                    queue.append(w)

    kept = sorted(alive)
    index = {old: new for new, old in enumerate(kept)}
    kept_edges = tuple(sorted((index[i], index[j]) for i, j in edges if i in alive and j in alive))
    return tuple(states[v] for v in kept), kept_edges


def build_survivor_sft(lower: Union[EPSequence, TruncatedWord], beta: MultinacciBeta) -> SurvivorSFT:
    """
    Graph of the survivor shift above ``lower``.

    Args:
        lower: Floor sequence, normally ``s 0^inf`` or ``s^inf`` for a
            beta-Lyndon word s. Other eventually periodic floors give an
            outer approximation flagged ``exact=False``.
        beta: Base supplying the ceiling delta(beta).

    Raises:
        BetaDomainError: ``lower`` is not eventually periodic.
    """
    if not isinstance(lower, EPSequence):
        raise BetaDomainError(f"Survivor graph needs an eventually periodic floor, got {lower!r}")
    p, exact = floor_length(lower)
    k = max(p, beta.delta.orbit_length, 2)
    lo, hi = lower.prefix(k), beta.delta.prefix(k)
    if not exact:
        logger.warning("Floor %s is not of the form s0^inf or s^inf; graph is an outer bound", lower)

    words = _vertex_words(k - 1, lo, hi)
    index = {w: i for i, w in enumerate(words)}
    edges: List[Edge] = []
    for i, word in enumerate(words):
        for digit in "01":
            block = word + digit
            if not lo <= block <= hi:
                continue
            j = index.get(block[1:])
            if j is not None:
                edges.append((i, j))

    live_states, live_edges = _prune(words, edges, sources=False)
    states, essential_edges = _prune(words, edges, sources=True)
    sft = SurvivorSFT(
        block_len=k,
        states=states,
        edges=essential_edges,
        lower=lower,
        beta=beta,
        exact=exact,
        live_states=live_states,
        live_edges=live_edges,
    )
    logger.info("Built survivor graph for %s over %s: k=%d, %d states, %d edges",
                lower, beta.label, k, len(states), len(essential_edges))
    return sft


# ============================================================================
# Queries
# ============================================================================

def is_transitive(sft: SurvivorSFT) -> bool:
    """True iff the essential graph is nonempty and strongly connected."""
    if not sft.states:
        return False
    return len(strongly_connected_components(sft.successors())) == 1


def _check_length(n: int) -> None:
    if n < 1:
        raise BetaDomainError(f"Block length must be positive, got {n}")


def count_blocks(sft: SurvivorSFT, n: int, essential: bool = False) -> int:
    """
    Exact number of length-n words of the shift.

    Words shorter than a vertex are counted as distinct vertex prefixes;
    longer ones as walks with ``n - k + 1`` edges, in big integers.

    Args:
        sft: Survivor graph.
        n: Word length, at least 1.
        essential: Count on the essential graph instead of the live one.
    """
    _check_length(n)
    states = sft.states if essential else sft.live_states
    edges = sft.edges if essential else sft.live_edges
    k = sft.block_len
    if n <= k - 1:
        return len({s[:n] for s in states})

    counts = [1] * len(states)
    for _ in range(n - k + 1):
        nxt = [0] * len(states)
        for i, j in edges:
            nxt[j] += counts[i]
        counts = nxt
    return sum(counts)


def language_blocks(sft: SurvivorSFT, n: int) -> FrozenSet[str]:
    """The set of length-n words of the one-sided shift."""
    _check_length(n)
    k = sft.block_len
    if n <= k - 1:
        return frozenset(s[:n] for s in sft.live_states)

    succ: List[List[int]] = [[] for _ in sft.live_states]
    for i, j in sft.live_edges:
        succ[i].append(j)
    ending: Dict[int, Set[str]] = {i: {s} for i, s in enumerate(sft.live_states)}
    for _ in range(n - k + 1):
        nxt: Dict[int, Set[str]] = {}
        for i, words in ending.items():
            for j in succ[i]:
                digit = sft.live_states[j][-1]
                nxt.setdefault(j, set()).update(w + digit for w in words)
        ending = nxt
    out: Set[str] = set()
    for words in ending.values():
        out.update(words)
    return frozenset(out)


def sft_equal(a: SurvivorSFT, b: SurvivorSFT) -> bool:
    """
    True iff the two shifts have the same language.

    Both are determined by their words of length ``max(k_a, k_b)``.
    """
    if a.beta != b.beta:
        raise BetaDomainError(f"Cannot compare shifts over {a.beta.label} and {b.beta.label}")
    n = max(a.block_len, b.block_len)
    return language_blocks(a, n) == language_blocks(b, n)
