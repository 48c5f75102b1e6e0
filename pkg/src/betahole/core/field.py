"""
Exact arithmetic in the number field Q(beta).

Elements are rational coefficient vectors reduced modulo the monic minimal
polynomial of beta. Signs are decided by evaluating the coefficient polynomial
over a dyadic enclosure of the root with integer arithmetic, refining the
enclosure until the result interval excludes zero. Nothing here ever compares
floats.

Supported bases:
    - multinacci m >= 1: root in (1, 2) of x^{m+1} - x^m - ... - x - 1
    - TWO: beta = 2 exactly, arithmetic is plain rational
    - sparse m >= 1 (experimental): root of x^{m+1} - x^m - 1,
      quasi-greedy expansion of 1 equal to (1 0^m)^inf
"""

import functools
import logging
import math
from fractions import Fraction
from typing import Final, List, Optional, Sequence, Tuple, Union

from ..memory.cache import EnclosureCache
from .errors import BetaDomainError, InvariantViolation
from .primitives import Sign
from .symbolic import EPSequence

logger = logging.getLogger(__name__)

TWO: Final = "two"
MULTINACCI: Final = "multinacci"
SPARSE: Final = "sparse"
ENCLOSURE_BITS: Final = 64

# Sign decisions double the enclosure precision up to this many bits.
_MAX_SIGN_BITS: Final = 1 << 16

Order = Union[int, str]
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ============================================================================
# Polynomials over Q (little-endian coefficient lists)
# ============================================================================

def _trim(poly: List[Fraction]) -> List[Fraction]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    size = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(size)]
    return _trim(out)


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    rem = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("Polynomial division by zero")
    quot = [_ZERO] * max(len(rem) - len(den) + 1, 0)
    lead = den[-1]
    while rem and len(rem) >= len(den):
        offset = len(rem) - len(den)
        factor = rem[-1] / lead
        quot[offset] = factor
        for i, c in enumerate(den):
            rem[offset + i] -= factor * c
        _trim(rem)
    return _trim(quot), rem


def _poly_inverse(a: Sequence[Fraction], modulus: Sequence[Fraction]) -> List[Fraction]:
    """``s`` with ``s * a == 1 (mod modulus)`` via the extended Euclidean algorithm."""
    r0, r1 = _trim(list(modulus)), _trim(list(a))
    s0: List[Fraction] = []
    s1: List[Fraction] = [_ONE]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        # Nontrivial gcd: the modulus is reducible and a is a zero divisor.
        raise InvariantViolation("Element shares a factor with the minimal polynomial")
    c = r0[0]
    return [x / c for x in s0]


def _scaled_value(coeffs: Sequence[int], numerator: int, bits: int) -> int:
    """``2**(bits*deg) * p(numerator / 2**bits)`` for an integer polynomial ``p``."""
    deg = len(coeffs) - 1
    total = 0
    for i, c in enumerate(coeffs):
        if c:
            total += c * numerator ** i << (bits * (deg - i))
    return total


# ============================================================================
# The base
# ============================================================================

def _defining_polynomial(order: Order, family: str) -> Tuple[int, ...]:
    if order == TWO:
        return (-2, 1)
    if family == MULTINACCI:
        return tuple([-1] * (order + 1) + [1])

    coeffs = [0] * (order + 2)
    coeffs[0] = -1
    coeffs[order] = -1
    coeffs[order + 1] = 1
    if order % 6 == 4:
        # x^2 - x + 1 divides x^{m+1} - x^m - 1 exactly when m = 4 (mod 6).
        quot, rem = _poly_divmod([Fraction(c) for c in coeffs], [_ONE, -_ONE, _ONE])
        if rem:
            raise InvariantViolation(f"Expected cyclotomic factor for sparse order {order}")
        coeffs = [int(c) for c in quot]
    return tuple(coeffs)


def _delta_of(order: Order, family: str) -> EPSequence:
    if order == TWO:
        return EPSequence.periodic("1")
    if family == MULTINACCI:
        return EPSequence.periodic("1" * order + "0")
    return EPSequence.periodic("1" + "0" * order)


class MultinacciBeta:
    """
    A base beta in (1, 2] represented exactly by its minimal polynomial.

    Instances are cached by :func:`make_beta`; equality and hashing go by
    ``(family, order)``. The enclosure ladder is shared by all threads.
    """

    def __init__(self, order: Order, family: str = MULTINACCI):
        self.order = order
        self.family = family
        self.min_poly: Tuple[int, ...] = _defining_polynomial(order, family)
        self.degree = len(self.min_poly) - 1
        self.delta: EPSequence = _delta_of(order, family)
        self._exact_root: Optional[int] = 2 if order == TWO else None
        self._enclosures = EnclosureCache(self._bisect, seed=1)

        self._zero = FieldElement((_ZERO,) * self.degree, self)
        self._one = self.scalar(1)
        self._gen = self.element([0, 1]) if self.degree > 1 else self.scalar(2)

    def __repr__(self) -> str:
        return f"MultinacciBeta({self.label}, enclosure~{float(self.enclosure()[0]):.10f})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultinacciBeta):
            return NotImplemented
        return self.order == other.order and self.family == other.family

    def __hash__(self) -> int:
        return hash((self.family, self.order))

    def __reduce__(self):
        return (make_beta, (self.order, self.family))

    # ------------------------------------------------------------------
    # Identity
    # ------------------------------------------------------------------

    @property
    def is_two(self) -> bool:
        return self._exact_root is not None

    @property
    def experimental(self) -> bool:
        return self.family == SPARSE

    @property
    def label(self) -> str:
        if self.is_two:
            return TWO
        prefix = "" if self.family == MULTINACCI else f"{self.family} "
        return f"{prefix}m={self.order}"

    # ------------------------------------------------------------------
    # Root enclosure
    # ------------------------------------------------------------------

    def _bisect(self, numerator: int, bits: int) -> int:
        mid = 2 * numerator + 1
        value = _scaled_value(self.min_poly, mid, bits + 1)
        if value == 0:
            raise InvariantViolation(f"Minimal polynomial of {self.label} has a dyadic root")
        return 2 * numerator if value > 0 else mid

    def enclosure(self, bits: int = ENCLOSURE_BITS) -> Tuple[Fraction, Fraction]:
        """Rational ``(lo, hi)`` around the root with ``hi - lo = 2**-bits``."""
        if self._exact_root is not None:
            root = Fraction(self._exact_root)
            return root, root
        a = self._enclosures.get(bits)
        return Fraction(a, 1 << bits), Fraction(a + 1, 1 << bits)

    def enclosure_numerator(self, bits: int) -> int:
        return self._enclosures.get(bits)

    def log_bounds(self) -> Tuple[float, float]:
        """Outward-rounded ``(log lo, log hi)`` for the root."""
        lo, hi = self.enclosure()
        return _round_down(math.log(_round_down(float(lo)))), _round_up(math.log(_round_up(float(hi))))

    def __float__(self) -> float:
        lo, hi = self.enclosure()
        return float((lo + hi) / 2)

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return self._zero

    @property
    def one(self) -> "FieldElement":
        return self._one

    @property
    def gen(self) -> "FieldElement":
        """beta itself as a field element."""
        return self._gen

    def scalar(self, value: Scalar) -> "FieldElement":
        coeffs = [Fraction(value)] + [_ZERO] * (self.degree - 1)
        return FieldElement(tuple(coeffs), self)

    def element(self, coeffs: Sequence[Scalar]) -> "FieldElement":
        """``c_0 + c_1 beta + ...`` reduced into canonical form."""
        return FieldElement(self._reduce([Fraction(c) for c in coeffs]), self)

    def coerce(self, value: Union["FieldElement", Scalar]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.beta != self:
                raise BetaDomainError(f"Element of {value.beta.label} used with {self.label}")
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return self.scalar(value)
        raise TypeError(f"Cannot interpret {type(value).__name__} as an element of Q(beta)")

    @functools.cached_property
    def threshold(self) -> "FieldElement":
        """``1 - 1/beta``, the supremum of the bifurcation set."""
        return self._one - self._gen.inverse()

    @functools.cached_property
    def upper_limit(self) -> "FieldElement":
        """``1 / (beta - 1)``, the right end of the expansion interval."""
        return (self._gen - 1).inverse()

    def _reduce(self, coeffs: List[Fraction]) -> Tuple[Fraction, ...]:
        d = self.degree
        p = self.min_poly
        c = list(coeffs)
        for top in range(len(c) - 1, d - 1, -1):
            lead = c[top]
            if lead:
                base = top - d
                for i in range(d):
                    if p[i]:
                        c[base + i] -= lead * p[i]
        c = c[:d]
        if len(c) < d:
            c.extend([_ZERO] * (d - len(c)))
        return tuple(c)

    def _sign(self, coeffs: Tuple[Fraction, ...]) -> Sign:
        top = len(coeffs) - 1
        while top >= 0 and coeffs[top] == 0:
            top -= 1
        if top < 0:
            return Sign.ZERO
        if top == 0:
            return Sign(1 if coeffs[0] > 0 else -1)
        if self._exact_root is not None:
            value = sum(c * self._exact_root ** i for i, c in enumerate(coeffs))
            return Sign((value > 0) - (value < 0))

        den = math.lcm(*(c.denominator for c in coeffs[: top + 1]))
        nums = [int(c * den) for c in coeffs[: top + 1]]
        bits = ENCLOSURE_BITS
        while bits <= _MAX_SIGN_BITS:
            lo, hi = _interval_value(nums, self._enclosures.get(bits), bits)
            if lo > 0:
                return Sign.POSITIVE
            if hi < 0:
                return Sign.NEGATIVE
            bits *= 2
        raise InvariantViolation(f"Sign undecided at {_MAX_SIGN_BITS} bits")

    def _interval(self, coeffs: Tuple[Fraction, ...], bits: int) -> Tuple[Fraction, Fraction]:
        top = len(coeffs) - 1
        while top > 0 and coeffs[top] == 0:
            top -= 1
        if top == 0:
            return coeffs[0], coeffs[0]
        if self._exact_root is not None:
            value = sum(c * self._exact_root ** i for i, c in enumerate(coeffs))
            return value, value
        den = math.lcm(*(c.denominator for c in coeffs[: top + 1]))
        nums = [int(c * den) for c in coeffs[: top + 1]]
        lo, hi = _interval_value(nums, self._enclosures.get(bits), bits)
        scale = den << (bits * top)
        return Fraction(lo, scale), Fraction(hi, scale)


def _interval_value(nums: Sequence[int], a: int, bits: int) -> Tuple[int, int]:
    """
    Bounds on ``2**(bits*top) * sum(nums[i] * x**i)`` for ``x`` in
    ``[a / 2**bits, (a + 1) / 2**bits]``; the root is positive so powers are
    monotone and each term is bounded at one endpoint.
    """
    top = len(nums) - 1
    lo = hi = 0
    p_lo = p_hi = 1
    for i, n in enumerate(nums):
        if n:
            scale = bits * (top - i)
            if n > 0:
                lo += n * p_lo << scale
                hi += n * p_hi << scale
            else:
                lo += n * p_hi << scale
                hi += n * p_lo << scale
        p_lo *= a
        p_hi *= a + 1
    return lo, hi


def _round_down(x: float) -> float:
    return math.nextafter(math.nextafter(x, -math.inf), -math.inf)


def _round_up(x: float) -> float:
    return math.nextafter(math.nextafter(x, math.inf), math.inf)


# ============================================================================
# Elements
# ============================================================================

class FieldElement:
    """
    ``c_0 + c_1 beta + ... + c_{d-1} beta^{d-1}`` with rational coefficients.

    Immutable. Supports ``+ - * / **`` with other elements of the same base and
    with ints and Fractions; comparisons are exact.
    """

    __slots__ = ("coeffs", "beta", "_hash")

    def __init__(self, coeffs: Tuple[Fraction, ...], beta: MultinacciBeta):
        self.coeffs = coeffs
        self.beta = beta
        self._hash: Optional[int] = None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.beta == other.beta and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == self.beta.scalar(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            # rational elements hash like the Fraction they equal
            self._hash = hash(self.coeffs[0]) if self.is_rational else hash((self.beta, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.beta.label})"

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            magnitude = abs(c)
            if i == 0:
                body = str(magnitude)
            else:
                power = "b" if i == 1 else f"b^{i}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _other(self, other) -> Optional["FieldElement"]:
        try:
            return self.beta.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(tuple(x + y for x, y in zip(self.coeffs, o.coeffs)), self.beta)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(tuple(x - y for x, y in zip(self.coeffs, o.coeffs)), self.beta)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "FieldElement":
        return FieldElement(tuple(-x for x in self.coeffs), self.beta)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.is_rational:
            q = o.coeffs[0]
            return FieldElement(tuple(x * q for x in self.coeffs), self.beta)
        return FieldElement(self.beta._reduce(_poly_mul(self.coeffs, o.coeffs)), self.beta)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.beta.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def times_beta(self) -> "FieldElement":
        """``beta * self``: a coefficient shift plus one reduction step."""
        return FieldElement(self.beta._reduce([_ZERO, *self.coeffs]), self.beta)

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("Division by zero in Q(beta)")
        if self.is_rational:
            return self.beta.scalar(1 / self.coeffs[0])
        modulus = [Fraction(c) for c in self.beta.min_poly]
        return FieldElement(self.beta._reduce(_poly_inverse(self.coeffs, modulus)), self.beta)

    # ------------------------------------------------------------------
    # Order
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero

    def sign(self) -> Sign:
        return self.beta._sign(self.coeffs)

    def compare(self, other) -> Sign:
        o = self.beta.coerce(other)
        if o.coeffs == self.coeffs:
            return Sign.ZERO
        return (self - o).sign()

    def __lt__(self, other) -> bool:
        return self.compare(other) is Sign.NEGATIVE

    def __le__(self, other) -> bool:
        return self.compare(other) is not Sign.POSITIVE

    def __gt__(self, other) -> bool:
        return self.compare(other) is Sign.POSITIVE

    def __ge__(self, other) -> bool:
        return self.compare(other) is not Sign.NEGATIVE

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def interval(self, bits: int = ENCLOSURE_BITS) -> Tuple[Fraction, Fraction]:
        """Rational bounds on the real value from the ``bits``-level enclosure."""
        return self.beta._interval(self.coeffs, bits)

    def __float__(self) -> float:
        lo, hi = self.interval()
        return float((lo + hi) / 2)

    def to_decimal(self, digits: int) -> str:
        """Decimal rendering truncated toward -inf after ``digits`` places."""
        if digits < 0:
            raise BetaDomainError(f"Digit count must be nonnegative, got {digits}")
        scale = 10 ** digits
        bits = ENCLOSURE_BITS
        while True:
            lo, hi = self.interval(bits)
            floor_lo = math.floor(lo * scale)
            if lo == hi or floor_lo == math.floor(hi * scale):
                break
            bits *= 2
            if bits > _MAX_SIGN_BITS:
                raise InvariantViolation("Decimal rendering did not converge")
        sign = "-" if floor_lo < 0 else ""
        whole, frac = divmod(abs(floor_lo), scale)
        if digits == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{frac:0{digits}d}"

    def coefficient_strings(self) -> List[str]:
        return [str(c) for c in self.coeffs]


# ============================================================================
# Public operations
# ============================================================================

@functools.lru_cache(maxsize=None)
def _cached_beta(order: Order, family: str) -> MultinacciBeta:
    beta = MultinacciBeta(order, family)
    logger.debug("Constructed base %s with minimal polynomial %s", beta.label, beta.min_poly)
    return beta


def normalize_order(m: Union[Order, str]) -> Order:
    """Accept ``1``, ``"3"``, ``"two"`` or ``TWO``; reject everything else."""
    if isinstance(m, bool):
        raise BetaDomainError("Order must be a positive integer or 'two'")
    if isinstance(m, str):
        text = m.strip().lower()
        if text == TWO:
            return TWO
        if not text.isdigit():
            raise BetaDomainError(f"Order must be a positive integer or 'two', got {m!r}")
        m = int(text)
    if not isinstance(m, int) or m < 1:
        raise BetaDomainError(f"Order must be a positive integer or 'two', got {m!r}")
    return m


def make_beta(m: Union[Order, str], family: str = MULTINACCI) -> MultinacciBeta:
    """
    The base for order ``m`` (or ``TWO``).

    Args:
        m: Positive integer order, or "two" for beta = 2.
        family: MULTINACCI (default) or the experimental SPARSE family.

    Returns:
        Shared MultinacciBeta instance with a 2**-64 enclosure available.
    """
    order = normalize_order(m)
    if family not in (MULTINACCI, SPARSE):
        raise BetaDomainError(f"Unknown base family {family!r}")
    if order == TWO:
        family = MULTINACCI
    elif family == SPARSE:
        logger.warning("Sparse base family (1 0^%d)^inf is experimental", order)
    beta = _cached_beta(order, family)
    beta.enclosure()
    return beta


def fe_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact ``a op b`` for op in {add, sub, mul, div}."""
    if a.beta != b.beta:
        raise BetaDomainError("Operands live in different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise BetaDomainError(f"Unsupported field operation {op!r}")


def fe_sign(a: FieldElement) -> Sign:
    return a.sign()
