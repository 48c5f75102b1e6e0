"""
Strongly connected components and certified Perron roots.

The entropy of a graph shift is the log of the largest Perron root over its
strongly connected components. Each root is found by power iteration on
``A + I`` (aperiodic, same Perron vector) and then certified with the
Collatz-Wielandt bounds ``min_i (Ax)_i / x_i <= rho <= max_i (Ax)_i / x_i``,
evaluated in exact integer arithmetic on the float iterate read as an exact
rational vector. Only the certified bracket is reported.
"""

import logging
import math
from fractions import Fraction
from typing import TYPE_CHECKING, List, Sequence, Tuple

import numpy as np

from ..core.errors import BetaDomainError
from ..core.primitives import EntropyBound

if TYPE_CHECKING:
    from .sft import SurvivorSFT

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MAX_POWER_ITERATIONS = 200_000

_CHECK_EVERY = 8
# Every positive double times 2**1100 is an integer.
_INT_SCALE_BITS = 1100
_EMPTY = EntropyBound(float("-inf"), float("-inf"), float("-inf"))


# ============================================================================
# Components
# ============================================================================

def strongly_connected_components(successors: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Tarjan's algorithm without recursion.

    Args:
        successors: ``successors[v]`` lists the targets of edges out of ``v``.

    Returns:
        Components as sorted vertex lists, in reverse topological order.
    """
    preorder = {}
    lowlink = {}
    found = set()
    pending: List[int] = []
    components: List[List[int]] = []
    counter = 0
    for source in range(len(successors)):
        if source in found:
            continue
        stack = [source]
        while stack:
            v = stack[-1]
            if v not in preorder:
                counter += 1
                preorder[v] = counter
            done = True
            for w in successors[v]:
                if w not in preorder:
                    stack.append(w)
                    done = False
                    break
            if not done:
                continue
            low = preorder[v]
            for w in successors[v]:
                if w not in found:
                    low = min(low, lowlink[w] if preorder[w] > preorder[v] else preorder[w])
            lowlink[v] = low
            stack.pop()
            if low == preorder[v]:
                component = [v]
                while pending and preorder[pending[-1]] > preorder[v]:
                    component.append(pending.pop())
                found.update(component)
                components.append(sorted(component))
            else:
                pending.append(v)
    return components


# ============================================================================
# Perron roots
# ============================================================================

def _collatz_wielandt(x: np.ndarray, succ: Sequence[Sequence[int]]) -> Tuple[Fraction, Fraction]:
    """Exact min/max of ``(Ax)_i / x_i`` for the float iterate ``x`` taken as exact rationals."""
    ints = []
    for v in x.tolist():
        num, den = v.as_integer_ratio()
        ints.append(num * ((1 << _INT_SCALE_BITS) // den))
    lo_num, lo_den = None, 1
    hi_num, hi_den = 0, 1
    for i, targets in enumerate(succ):
        num = sum(ints[j] for j in targets)
        den = ints[i]
        if lo_num is None or num * lo_den < lo_num * den:
            lo_num, lo_den = num, den
        if num * hi_den > hi_num * den:
            hi_num, hi_den = num, den
    return Fraction(lo_num, lo_den), Fraction(hi_num, hi_den)


def _log_down(q: Fraction) -> float:
    if q <= 0:
        return float("-inf")
    x = math.log(math.nextafter(float(q), 0.0))
    return math.nextafter(math.nextafter(x, -math.inf), -math.inf)


def _log_up(q: Fraction) -> float:
    x = math.log(math.nextafter(float(q), math.inf))
    return math.nextafter(math.nextafter(x, math.inf), math.inf)


def perron_bracket(
    succ: Sequence[Sequence[int]],
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_POWER_ITERATIONS,
) -> Tuple[float, float, int]:
    """
    Certified ``(log lo, log hi)`` bracket on the Perron root of an irreducible
    0/1 matrix given by successor lists, plus the iteration count.
    """
    n = len(succ)
    src = np.fromiter((i for i, targets in enumerate(succ) for _ in targets), dtype=np.int64)
    dst = np.fromiter((j for targets in succ for j in targets), dtype=np.int64)

    x = np.ones(n, dtype=np.float64)
    lo = hi = None
    for iteration in range(1, max_iter + 1):
        ax = np.bincount(src, weights=x[dst], minlength=n)
        if iteration % _CHECK_EVERY == 0 or iteration == max_iter:
            ratios = ax / x
            spread = ratios.max() / ratios.min() - 1.0
            if spread <= tol / 4 or iteration == max_iter:
                q_lo, q_hi = _collatz_wielandt(x, succ)
                lo, hi = _log_down(q_lo), _log_up(q_hi)
                if hi - lo <= tol:
                    return lo, hi, iteration
        y = ax + x
        x = y / y.max()

    logger.warning("Power iteration stopped at %d steps with bracket width %.3e > tol %.1e",
                   max_iter, hi - lo, tol)
    return lo, hi, max_iter


def entropy_spectral(sft: "SurvivorSFT", tol: float = DEFAULT_TOL) -> EntropyBound:
    """
    Topological entropy of the essential graph as a certified bracket.

    Returns:
        EntropyBound with hi - lo <= tol unless the iteration cap was hit;
        -inf in every field for an empty language.
    """
    if tol <= 0:
        raise BetaDomainError(f"Tolerance must be positive, got {tol}")
    succ = sft.successors()
    if not succ:
        return _EMPTY

    best_lo = best_hi = float("-inf")
    total_iterations = 0
    for component in strongly_connected_components(succ):
        members = set(component)
        if len(component) == 1 and component[0] not in succ[component[0]]:
            continue
        local = {v: k for k, v in enumerate(component)}
        local_succ = [[local[w] for w in succ[v] if w in members] for v in component]
        lo, hi, iterations = perron_bracket(local_succ, tol)
        total_iterations += iterations
        best_lo = max(best_lo, lo)
        best_hi = max(best_hi, hi)

    if best_hi == float("-inf"):
        return _EMPTY
    logger.debug("Entropy bracket [%.15f, %.15f] after %d iterations", best_lo, best_hi, total_iterations)
    return EntropyBound((best_lo + best_hi) / 2, best_lo, best_hi, total_iterations)


def entropy_eigvals(sft: "SurvivorSFT", max_states: int = 12) -> float:
    """Cross-check for small graphs: log of the largest |eigenvalue| via numpy."""
    n = len(sft.states)
    if n > max_states:
        raise BetaDomainError(f"Dense eigenvalue check limited to {max_states} states, graph has {n}")
    if n == 0:
        return float("-inf")
    matrix = np.zeros((n, n))
    for i, j in sft.edges:
        matrix[i, j] += 1.0
    rho = float(np.max(np.abs(np.linalg.eigvals(matrix))))
    return math.log(rho) if rho > 0 else float("-inf")
