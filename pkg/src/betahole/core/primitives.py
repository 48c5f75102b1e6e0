"""
Small immutable value types shared across the package.

Slots-based frozen dataclasses keep per-instance overhead low; thousands of
intervals and estimates are created during a depth-20 sweep.
"""

import dataclasses
from enum import Enum, IntEnum
from typing import Optional


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Verdict(str, Enum):
    """Membership outcome. Unknown is a first-class answer, not an error."""
    MEMBER = "member"
    NONMEMBER = "nonmember"
    UNKNOWN = "unknown"


class EstimateMethod(str, Enum):
    EXACT_SFT = "exact_sft"
    BRACKETED = "bracketed"
    ZERO_TAIL = "zero_tail"


@dataclasses.dataclass(slots=True, frozen=True)
class TruncatedWord:
    """
    Prefix of an expansion whose orbit did not close within ``horizon`` steps.

    Never coerced to a periodic sequence; callers must branch on it.
    """
    prefix: str
    horizon: int

    def __len__(self) -> int:
        return len(self.prefix)

    def __str__(self) -> str:
        return f"{self.prefix}..."


@dataclasses.dataclass(slots=True, frozen=True)
class EntropyBound:
    """
    Certified bracket on a topological entropy.

    lo and hi are logs of exact Collatz-Wielandt bounds on the Perron root,
    rounded outward. An empty language is reported with all three fields
    equal to -inf.
    """
    value: float
    lo: float
    hi: float
    iterations: int = 0

    @property
    def width(self) -> float:
        if self.hi == self.lo:
            return 0.0
        return self.hi - self.lo

    @property
    def is_empty(self) -> bool:
        return self.hi == float("-inf")


@dataclasses.dataclass(slots=True, frozen=True)
class DimensionEstimate:
    lo: float
    hi: float
    method: EstimateMethod
    entropy_lo: float
    entropy_hi: float
    depth_used: int
    word: Optional[str] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.lo <= self.hi <= 1.0:
            raise ValueError(f"Dimension bracket out of order: [{self.lo}, {self.hi}]")

    @property
    def value(self) -> float:
        return (self.lo + self.hi) / 2.0

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclasses.dataclass(slots=True, frozen=True)
class MembershipResult:
    """
    Verdict plus the evidence behind it.

    ``witness`` is the least n with T^n(t) < t for nonmembers decided on the
    orbit; ``horizon`` is set when the verdict is unknown; ``word`` names the
    Lyndon interval that covers t, when one was found.
    """
    verdict: Verdict
    witness: Optional[int] = None
    horizon: Optional[int] = None
    word: Optional[str] = None

    @property
    def is_member(self) -> bool:
        return self.verdict is Verdict.MEMBER

    @property
    def is_decided(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN
