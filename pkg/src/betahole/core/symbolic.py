"""
Binary words and eventually periodic sequences.

An :class:`EPSequence` ``u v^inf`` is canonicalized on construction: the period
is primitive and the preperiod is as short as possible. Two sequences denote
the same infinite word iff their canonical forms are equal, so dataclass
equality is sequence equality.

Digits are stored as ``str`` over ``"01"``; Python string comparison of equal
length words is exactly the lexicographic order used throughout.
"""

import dataclasses
import re
from typing import Iterator, List, Union

from .errors import BetaDomainError
from .primitives import Ordering

_DIGITS = frozenset("01")
_LITERAL = re.compile(r"^([01]*)\(([01]+)\)$")


def _check_digits(digits: str) -> None:
    if not _DIGITS.issuperset(digits):
        raise BetaDomainError(f"Binary digits expected, got {digits!r}")


@dataclasses.dataclass(slots=True, frozen=True)
class BinaryWord:
    """A finite word over {0, 1}."""
    digits: str = ""

    def __post_init__(self) -> None:
        _check_digits(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return self.digits

    def __iter__(self) -> Iterator[int]:
        return (int(c) for c in self.digits)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return BinaryWord(self.digits[index])
        return int(self.digits[index])

    def __add__(self, other: "WordLike") -> "BinaryWord":
        return BinaryWord(self.digits + as_digits(other))

    def __lt__(self, other: "BinaryWord") -> bool:
        return self.digits < as_digits(other)

    def reflect(self) -> "BinaryWord":
        return BinaryWord(reflect(self.digits))


WordLike = Union[str, BinaryWord]


def as_digits(word: WordLike) -> str:
    """Digit string of a word given either as ``str`` or :class:`BinaryWord`."""
    if isinstance(word, BinaryWord):
        return word.digits
    _check_digits(word)
    return word


def reflect(word: WordLike) -> WordLike:
    """Digitwise complement ``c -> 1 - c``; preserves the input type."""
    if isinstance(word, BinaryWord):
        return word.reflect()
    _check_digits(word)
    return word.translate(str.maketrans("01", "10"))


def primitive_root(word: str) -> str:
    """Shortest ``r`` with ``word == r * k``."""
    size = len(word)
    index = (word + word).find(word, 1)
    if index < size and size % index == 0:
        return word[:index]
    return word


@dataclasses.dataclass(slots=True, frozen=True)
class EPSequence:
    """
    The eventually periodic sequence ``preperiod (period)^inf``.

    Fields hold canonical digit strings after construction.
    """
    preperiod: str
    period: str

    def __post_init__(self) -> None:
        _check_digits(self.preperiod)
        _check_digits(self.period)
        if not self.period:
            raise BetaDomainError("Period of an eventually periodic sequence must be nonempty")

        u = self.preperiod
        v = primitive_root(self.period)
        # Roll matching tail digits of u into the period.
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1] + v[:-1]
        object.__setattr__(self, "preperiod", u)
        object.__setattr__(self, "period", v)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def periodic(cls, word: WordLike) -> "EPSequence":
        """``word^inf``"""
        return cls("", as_digits(word))

    @classmethod
    def finite(cls, word: WordLike) -> "EPSequence":
        """``word 0^inf``"""
        return cls(as_digits(word), "0")

    @classmethod
    def parse(cls, text: str) -> "EPSequence":
        """Parse the literal ``u(v)``, e.g. ``(001)`` or ``01(0)``."""
        match = _LITERAL.match(text.strip())
        if match is None:
            raise BetaDomainError(f"Sequence literal must look like u(v), got {text!r}")
        return cls(match.group(1), match.group(2))

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        return f"{self.preperiod}({self.period})"

    @property
    def orbit_length(self) -> int:
        """Number of distinct shifts, ``|u| + |v|``."""
        return len(self.preperiod) + len(self.period)

    @property
    def is_purely_periodic(self) -> bool:
        return not self.preperiod

    @property
    def ends_in_zeros(self) -> bool:
        return self.period == "0"

    def digit(self, index: int) -> int:
        u = self.preperiod
        if index < len(u):
            return int(u[index])
        return int(self.period[(index - len(u)) % len(self.period)])

    def prefix(self, length: int) -> str:
        u, v = self.preperiod, self.period
        if length <= len(u):
            return u[:length]
        tail = length - len(u)
        repeats = -(-tail // len(v))
        return u + (v * repeats)[:tail]

    def shift(self, n: int) -> "EPSequence":
        """``sigma^n`` of this sequence."""
        if n < 0:
            raise BetaDomainError(f"Shift amount must be nonnegative, got {n}")
        u, v = self.preperiod, self.period
        if n <= len(u):
            return EPSequence(u[n:], v)
        r = (n - len(u)) % len(v)
        return EPSequence("", v[r:] + v[:r])

    def distinct_shifts(self) -> List["EPSequence"]:
        """All of ``{sigma^n(self) : n >= 0}``, in order of first appearance."""
        return [self.shift(n) for n in range(self.orbit_length)]

    def reflect(self) -> "EPSequence":
        return EPSequence(reflect(self.preperiod), reflect(self.period))

    # ------------------------------------------------------------------
    # Order
    # ------------------------------------------------------------------

    def __lt__(self, other: "EPSequence") -> bool:
        return lex_cmp(self, other) is Ordering.LESS

    def __le__(self, other: "EPSequence") -> bool:
        return lex_cmp(self, other) is not Ordering.GREATER

    def __gt__(self, other: "EPSequence") -> bool:
        return lex_cmp(self, other) is Ordering.GREATER

    def __ge__(self, other: "EPSequence") -> bool:
        return lex_cmp(self, other) is not Ordering.LESS


def lex_cmp(a: EPSequence, b: EPSequence) -> Ordering:
    """
    Exact lexicographic comparison of two eventually periodic sequences.

    Past both preperiods the tails have periods |v_a| and |v_b|; if they agree
    on |v_a| + |v_b| further digits they agree forever (Fine and Wilf), which
    is a shorter horizon than the lcm of the periods.
    """
    if a == b:
        return Ordering.EQUAL
    horizon = max(len(a.preperiod), len(b.preperiod)) + len(a.period) + len(b.period)
    pa, pb = a.prefix(horizon), b.prefix(horizon)
    if pa < pb:
        return Ordering.LESS
    if pa > pb:
        return Ordering.GREATER
    return Ordering.EQUAL


def shift(a: EPSequence, n: int) -> EPSequence:
    return a.shift(n)


def distinct_shifts(a: EPSequence) -> List[EPSequence]:
    return a.distinct_shifts()
