"""
Greedy and quasi-greedy beta-expansions over {0, 1}.

The beta-transformation ``T(x) = beta x mod 1`` is iterated exactly in Q(beta).
Orbit points are keyed on their canonical coefficient tuples, so an
eventually periodic orbit is detected the moment it closes. Orbits that do
not close within the horizon come back as :class:`TruncatedWord`.
"""

import ast
import functools
import logging
import operator
import re
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from .errors import BetaDomainError, InvariantViolation
from .field import FieldElement, MultinacciBeta
from .primitives import Sign, TruncatedWord
from .symbolic import EPSequence

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 10_000

Expansion = Union[EPSequence, TruncatedWord]


def _check_unit(x: FieldElement) -> None:
    if x.sign() is Sign.NEGATIVE or x >= 1:
        raise BetaDomainError(f"Point must lie in [0, 1), got {x} ~ {float(x):.6f}")


# ============================================================================
# The map
# ============================================================================

def t_step(x: FieldElement) -> Tuple[int, FieldElement]:
    """One step of T: returns ``(floor(beta x), beta x - floor(beta x))``."""
    _check_unit(x)
    return _step(x)


def _step(x: FieldElement) -> Tuple[int, FieldElement]:
    y = x.times_beta()
    if y >= 1:
        return 1, y - 1
    return 0, y


def t_map(x: FieldElement) -> FieldElement:
    """``T(x) = beta x mod 1`` for ``x`` in [0, 1); digit available via :func:`t_step`."""
    return t_step(x)[1]


def _orbit_expansion(x: FieldElement, horizon: int, quasi: bool) -> Expansion:
    seen: Dict[tuple, int] = {}
    digits: List[str] = []
    point = x
    for index in range(horizon + 1):
        key = point.coeffs
        start = seen.get(key)
        if start is not None:
            return EPSequence("".join(digits[:start]), "".join(digits[start:]))
        if index == horizon:
            break
        seen[key] = index
        y = point.times_beta()
        # Greedy takes 1 at the boundary y == 1; quasi-greedy declines it
        # because the remainder would be 0 and the tail 0^inf.
        take = y > 1 if quasi else y >= 1
        if take:
            digits.append("1")
            point = y - 1
        else:
            digits.append("0")
            point = y
    logger.warning("Orbit of %s did not close within %d steps", x, horizon)
    return TruncatedWord("".join(digits), horizon)


def greedy_expand(x: FieldElement, horizon: int = DEFAULT_HORIZON) -> Expansion:
    """
    The greedy expansion b(x, beta) of ``x`` in [0, 1).

    Args:
        x: Point of Q(beta) in [0, 1).
        horizon: Maximum number of T-steps before giving up.

    Returns:
        The exact eventually periodic expansion, or a TruncatedWord holding
        the first ``horizon`` digits.
    """
    _check_unit(x)
    if horizon < 1:
        raise BetaDomainError(f"Horizon must be positive, got {horizon}")
    return _orbit_expansion(x, horizon, quasi=False)


def quasi_greedy_expand(x: FieldElement, horizon: int = DEFAULT_HORIZON) -> Expansion:
    """
    The quasi-greedy expansion a(x, beta) of ``x`` in (0, 1/(beta-1)].

    The largest expansion not ending in 0^inf. Expanding 1 must reproduce the
    stored delta(beta); a mismatch raises InvariantViolation.
    """
    beta = x.beta
    if x.sign() is not Sign.POSITIVE or x > beta.upper_limit:
        raise BetaDomainError(f"Point must lie in (0, 1/(beta-1)], got {x}")
    if horizon < 1:
        raise BetaDomainError(f"Horizon must be positive, got {horizon}")
    result = _orbit_expansion(x, horizon, quasi=True)
    if x == 1 and result != beta.delta:
        raise InvariantViolation(f"Quasi-greedy expansion of 1 is {result}, stored delta is {beta.delta}")
    return result


def greedy_expand_unit(beta: MultinacciBeta, horizon: int = DEFAULT_HORIZON) -> Expansion:
    """b(1, beta): the greedy digit sequence of 1 itself (1^{m+1} 0^inf for multinacci)."""
    rest = beta.gen - 1
    if rest >= 1:
        # beta = 2: 1 has no expansion starting 1 0..., only 1^inf
        return EPSequence.periodic("1")
    tail = greedy_expand(rest, horizon)
    if isinstance(tail, TruncatedWord):
        return TruncatedWord("1" + tail.prefix, horizon)
    return EPSequence("1" + tail.preperiod, tail.period)


# ============================================================================
# Evaluation
# ============================================================================

@functools.lru_cache(maxsize=4096)
def _inverse_power(beta: MultinacciBeta, n: int) -> FieldElement:
    return beta.gen ** -n


@functools.lru_cache(maxsize=4096)
def _tail_factor(beta: MultinacciBeta, n: int) -> FieldElement:
    """``1 / (beta^n - 1)``"""
    return (beta.gen ** n - 1).inverse()


def _horner(word: str, beta: MultinacciBeta) -> FieldElement:
    """``sum w_i beta^{|w|-i}``: the word read as an integer in base beta."""
    acc = beta.zero
    for c in word:
        acc = acc.times_beta()
        if c == "1":
            acc = acc + 1
    return acc


def word_value(word: str, beta: MultinacciBeta) -> FieldElement:
    """``sum_{i=1}^{|w|} w_i beta^{-i}``, the value of ``word 0^inf``."""
    return _horner(word, beta) * _inverse_power(beta, len(word))


def eval_expansion(d: EPSequence, beta: MultinacciBeta) -> FieldElement:
    """
    Exact value ``sum d_i beta^{-i}`` of an eventually periodic sequence.

    The periodic tail contributes ``V / (beta^{|u|} (beta^{|v|} - 1))`` where
    ``V`` is the period read as an integer in base beta.
    """
    u, v = d.preperiod, d.period
    value = word_value(u, beta) if u else beta.zero
    if v != "0":
        tail = _horner(v, beta) * _tail_factor(beta, len(v))
        value = value + tail * _inverse_power(beta, len(u))
    return value


# ============================================================================
# Parry admissibility
# ============================================================================

def is_greedy_admissible(d: EPSequence, beta: MultinacciBeta) -> bool:
    """True iff every shift of ``d`` is strictly below delta(beta)."""
    delta = beta.delta
    return all(s < delta for s in d.distinct_shifts())


def is_delta_valid(d: EPSequence) -> bool:
    """True iff ``d`` is the quasi-greedy expansion of 1 for some base in (1, 2]."""
    if d.ends_in_zeros:
        return False
    return all(s <= d for s in d.distinct_shifts())


# ============================================================================
# Value syntax
# ============================================================================

_BIN_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_SEQUENCE_LITERAL = re.compile(r"^[01]*\([01]+\)$")


def parse_value(text: str, beta: MultinacciBeta) -> FieldElement:
    """
    Parse a point of Q(beta).

    Accepted forms: a decimal (``0.25``, converted exactly), a rational
    (``1/4``), a polynomial in ``b`` (``2*b-3``, ``b^2 - 1``), or a sequence
    literal (``(001)``) routed through :func:`eval_expansion`.
    """
    source = text.strip()
    if _SEQUENCE_LITERAL.match(source):
        return eval_expansion(EPSequence.parse(source), beta)
    source = source.replace("^", "**")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise BetaDomainError(f"Cannot parse value {text!r}") from exc
    return _evaluate(tree.body, beta, source)


def _evaluate(node: ast.AST, beta: MultinacciBeta, source: str) -> FieldElement:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        # Decimals go through their source text, never through the float.
        return beta.scalar(Fraction(ast.get_source_segment(source, node) or repr(node.value)))
    if isinstance(node, ast.Name) and node.id in ("b", "beta"):
        return beta.gen
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        operand = _evaluate(node.operand, beta, source)
        return -operand if isinstance(node.op, ast.USub) else operand
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exponent = node.right
            if not (isinstance(exponent, ast.Constant) and isinstance(exponent.value, int)):
                if isinstance(exponent, ast.UnaryOp) and isinstance(exponent.op, ast.USub) \
                        and isinstance(exponent.operand, ast.Constant) and isinstance(exponent.operand.value, int):
                    return _evaluate(node.left, beta, source) ** -exponent.operand.value
                raise BetaDomainError(f"Exponents must be integer literals in {source!r}")
            return _evaluate(node.left, beta, source) ** exponent.value
        op = _BIN_OPS.get(type(node.op))
        if op is not None:
            return op(_evaluate(node.left, beta, source), _evaluate(node.right, beta, source))
    raise BetaDomainError(f"Unsupported expression in value {source!r}")
