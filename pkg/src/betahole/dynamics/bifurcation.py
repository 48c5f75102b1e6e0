"""
Bifurcation sets and the dimension function.

A point t of [0, 1) is in E(beta) when its orbit never drops below it,
``T^n(t) >= t`` for all n, which on greedy expansions reads
``sigma^n(b) >= b``. The complement of E below ``1 - 1/beta`` is the union of
the half-open beta-Lyndon intervals, so membership can be decided either on
the orbit or by locating t among the enumerated intervals; :func:`in_B` runs
both and treats any disagreement as a bug.

The dimension ``eta(t)`` of the survivor set is the entropy of the survivor
shift over ``log beta``. It is constant on each Lyndon interval, decreasing,
and vanishes from ``1 - 1/beta`` on. Points whose plateau can be named get an
exact estimate; everything else is bracketed between neighbouring right
endpoints.
"""

import dataclasses
import functools
import logging
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..concurrency.pipeline import run_partitioned
from ..core.errors import BetaDomainError, InvariantViolation
from ..core.expansion import DEFAULT_HORIZON, Expansion, greedy_expand, t_map
from ..core.field import FieldElement, MultinacciBeta
from ..core.primitives import (
    DimensionEstimate,
    EntropyBound,
    EstimateMethod,
    MembershipResult,
    Sign,
    TruncatedWord,
    Verdict,
)
from ..core.symbolic import EPSequence
from ..lyndon.intervals import DEFAULT_DEPTH, LyndonInterval, lyndon_catalog, make_interval
from ..lyndon.words import is_lyndon_word
from .sft import build_survivor_sft
from .spectral import DEFAULT_TOL, entropy_spectral

logger = logging.getLogger(__name__)

Radius = Union[int, Fraction, float, FieldElement]


# ============================================================================
# Interval location
# ============================================================================

@dataclasses.dataclass(slots=True, frozen=True)
class Found:
    interval: LyndonInterval


@dataclasses.dataclass(slots=True, frozen=True)
class NotCoveredAtDepth:
    depth: int


@dataclasses.dataclass(slots=True, frozen=True)
class AboveThreshold:
    threshold: FieldElement


Location = Union[Found, NotCoveredAtDepth, AboveThreshold]


def _check_point(t: FieldElement, beta: MultinacciBeta) -> None:
    if t.beta != beta:
        raise BetaDomainError(f"Point of {t.beta.label} used with {beta.label}")
    if t.sign() is Sign.NEGATIVE or t >= 1:
        raise BetaDomainError(f"Point must lie in [0, 1), got {t} ~ {float(t):.6f}")


def _left_index(catalog: Sequence[LyndonInterval], t: FieldElement) -> int:
    """Index of the last interval with ``t_left <= t``, or -1."""
    lo, hi = 0, len(catalog)
    while lo < hi:
        mid = (lo + hi) // 2
        if catalog[mid].t_left <= t:
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


def locate_interval(
    t: FieldElement,
    beta: MultinacciBeta,
    depth: int = DEFAULT_DEPTH,
    closed: bool = False,
) -> Location:
    """
    Find the enumerated Lyndon interval containing ``t``.

    Args:
        t: Point of [0, 1).
        beta: Base.
        depth: Maximum word length searched.
        closed: Match against ``[t_L, t_R]`` instead of ``[t_L, t_R)``.

    Returns:
        AboveThreshold for ``t >= 1 - 1/beta``, Found with the unique
        containing interval, or NotCoveredAtDepth.
    """
    _check_point(t, beta)
    if t >= beta.threshold:
        return AboveThreshold(beta.threshold)
    catalog = lyndon_catalog(beta, depth)
    index = _left_index(catalog, t)
    if index >= 0 and catalog[index].contains(t, closed=closed):
        return Found(catalog[index])
    return NotCoveredAtDepth(depth)


# ============================================================================
# Membership
# ============================================================================

def _digits(b: Expansion, n: int) -> str:
    if isinstance(b, TruncatedWord):
        return b.prefix[:n]
    return b.prefix(n)


def _drop_witness(t: FieldElement, b: Expansion) -> Optional[int]:
    """
    Least n >= 1 with ``sigma^n(b) < b``, or None if there is none.

    A closed orbit is decided on the sequence. An open one is followed
    exactly for ``len(b)`` steps, since comparing prefixes can miss a drop
    decided by later digits; None then means no drop within the horizon.
    """
    if isinstance(b, TruncatedWord):
        x = t
        for n in range(1, len(b) + 1):
            x = t_map(x)
            if x < t:
                return n
        return None
    for n in range(1, b.orbit_length):
        if b.shift(n) < b:
            return n
    return None


def in_E(t: FieldElement, beta: MultinacciBeta, horizon: int = DEFAULT_HORIZON) -> MembershipResult:
    """
    Decide ``T^n(t) >= t for all n`` on the exact orbit of ``t``.

    Nonmembers carry the least n with ``T^n(t) < t``. An orbit that neither
    closes nor drops within ``horizon`` steps gives an unknown verdict.
    """
    _check_point(t, beta)
    b = greedy_expand(t, horizon)
    witness = _drop_witness(t, b)
    if witness is not None:
        return MembershipResult(Verdict.NONMEMBER, witness=witness)
    if isinstance(b, TruncatedWord):
        return MembershipResult(Verdict.UNKNOWN, horizon=horizon)
    return MembershipResult(Verdict.MEMBER)


def _disagree(beta: MultinacciBeta, message: str) -> None:
    if beta.experimental:
        logger.warning("Membership routes disagree for experimental base %s: %s", beta.label, message)
        return
    raise InvariantViolation(message)


def _reconcile(
    t: FieldElement,
    beta: MultinacciBeta,
    orbit: MembershipResult,
    location: Location,
    depth: int,
    horizon: int,
) -> MembershipResult:
    """Merge the orbit verdict with the interval lookup; both must agree."""
    found = location.interval.word if isinstance(location, Found) else None

    if orbit.verdict is Verdict.MEMBER:
        if not isinstance(location, NotCoveredAtDepth):
            _disagree(beta, f"{t} has a non-dropping orbit but is covered by {location}")
        return orbit

    if orbit.verdict is Verdict.NONMEMBER:
        if isinstance(location, AboveThreshold):
            return orbit
        word = _digits(greedy_expand(t, horizon), orbit.witness)
        if found is not None and found != word:
            _disagree(beta, f"{t} lies in the interval of {found!r}, orbit names {word!r}")
        if found is None and orbit.witness <= depth:
            _disagree(beta, f"{t} drops at step {orbit.witness} but no interval of depth {depth} covers it")
        return MembershipResult(Verdict.NONMEMBER, witness=orbit.witness, word=word)

    if isinstance(location, Found):
        return MembershipResult(Verdict.NONMEMBER, word=found)
    if isinstance(location, AboveThreshold):
        return MembershipResult(Verdict.NONMEMBER)
    return orbit


def in_B(
    t: FieldElement,
    beta: MultinacciBeta,
    depth: int = DEFAULT_DEPTH,
    horizon: int = DEFAULT_HORIZON,
) -> MembershipResult:
    """
    Membership decided on the orbit and cross-checked against the intervals.

    Raises:
        InvariantViolation: the two routes disagree.
    """
    orbit = in_E(t, beta, horizon)
    return _reconcile(t, beta, orbit, locate_interval(t, beta, depth), depth, horizon)


def _is_right_endpoint(b: EPSequence) -> bool:
    return b.is_purely_periodic and not b.ends_in_zeros


def in_E_prime(t: FieldElement, beta: MultinacciBeta, horizon: int = DEFAULT_HORIZON) -> MembershipResult:
    """
    Membership in the two-sided set: E with the Lyndon right endpoints removed.

    A member with purely periodic expansion ``s^inf`` is the right endpoint
    of the interval of ``s``.
    """
    orbit = in_E(t, beta, horizon)
    if orbit.verdict is Verdict.MEMBER:
        b = greedy_expand(t, horizon)
        if _is_right_endpoint(b):
            return MembershipResult(Verdict.NONMEMBER, word=b.period)
    return orbit


def in_B_prime(
    t: FieldElement,
    beta: MultinacciBeta,
    depth: int = DEFAULT_DEPTH,
    horizon: int = DEFAULT_HORIZON,
) -> MembershipResult:
    """Two-sided membership checked against the closed intervals."""
    orbit = in_E_prime(t, beta, horizon)
    location = locate_interval(t, beta, depth, closed=True)
    if orbit.verdict is Verdict.NONMEMBER and orbit.witness is None and orbit.word is not None:
        # right endpoint
        found = location.interval.word if isinstance(location, Found) else None
        if found is not None and found != orbit.word:
            _disagree(beta, f"Right endpoint of {orbit.word!r} lies in the interval of {found!r}")
        if found is None and len(orbit.word) <= depth:
            _disagree(beta, f"Right endpoint of {orbit.word!r} not covered at depth {depth}")
        return orbit
    return _reconcile(t, beta, orbit, location, depth, horizon)


# ============================================================================
# Dimension
# ============================================================================

@functools.lru_cache(maxsize=4096)
def _floor_entropy(lower: EPSequence, beta: MultinacciBeta, tol: float) -> EntropyBound:
    return entropy_spectral(build_survivor_sft(lower, beta), tol)


def _ratio_bounds(entropy_lo: float, entropy_hi: float, beta: MultinacciBeta) -> Tuple[float, float]:
    log_lo, log_hi = beta.log_bounds()
    lo = entropy_lo / log_hi if entropy_lo > 0 else 0.0
    hi = entropy_hi / log_lo if entropy_hi > 0 else 0.0
    return min(max(lo, 0.0), 1.0), min(max(hi, 0.0), 1.0)


def _plateau_estimate(word: str, beta: MultinacciBeta, tol: float, depth: int) -> DimensionEstimate:
    """Exact estimate on the plateau of the Lyndon word ``word``."""
    bound = _floor_entropy(EPSequence.finite(word), beta, tol)
    lo, hi = _ratio_bounds(bound.lo, bound.hi, beta)
    return DimensionEstimate(lo, hi, EstimateMethod.EXACT_SFT, bound.lo, bound.hi, depth, word)


def _zero_tail(depth: int) -> DimensionEstimate:
    return DimensionEstimate(0.0, 0.0, EstimateMethod.ZERO_TAIL, 0.0, 0.0, depth)


def _full(beta: MultinacciBeta, depth: int) -> DimensionEstimate:
    # The survivor set of t = 0 is the whole beta-shift.
    log_lo, log_hi = beta.log_bounds()
    return DimensionEstimate(1.0, 1.0, EstimateMethod.EXACT_SFT, log_lo, log_hi, depth, "0")


def approach_words(digits: str, beta: MultinacciBeta, max_len: int, min_len: int = 1) -> Iterator[str]:
    """
    Lyndon words ``d_1 ... d_{j-1} 1`` taken where ``d_j = 0``.

    For ``digits`` a prefix of b(t, beta) their right endpoints lie above t
    and accumulate at t as j grows.
    """
    for j in range(max(min_len - 1, 0), min(len(digits), max_len)):
        if digits[j] == "0":
            word = digits[:j] + "1"
            if is_lyndon_word(word, beta):
                yield word


def _right_endpoints_above(
    t: FieldElement,
    b: Expansion,
    beta: MultinacciBeta,
    depth: int,
    max_len: int,
    strict: bool = True,
) -> List[LyndonInterval]:
    """Catalog intervals with ``t_R`` above ``t`` near t, plus approach words up to ``max_len``."""
    catalog = lyndon_catalog(beta, depth)
    out: List[LyndonInterval] = []
    index = _left_index(catalog, t)
    for iv in catalog[max(index, 0): index + 2]:
        if iv.t_right > t or (not strict and iv.t_right == t):
            out.append(iv)
    for word in approach_words(_digits(b, max_len), beta, max_len, min_len=depth + 1):
        iv = make_interval(word, beta)
        if iv.t_right > t or (not strict and iv.t_right == t):
            out.append(iv)
    return out


def _nearest(candidates: Iterable[LyndonInterval]) -> Optional[LyndonInterval]:
    best = None
    for iv in candidates:
        if best is None or iv.t_right < best.t_right:
            best = iv
    return best


def _bracket(
    t: FieldElement,
    b: Expansion,
    beta: MultinacciBeta,
    depth: int,
    tol: float,
) -> DimensionEstimate:
    catalog = lyndon_catalog(beta, depth)
    index = _left_index(catalog, t)

    # Lower bound: the closest right endpoint above t has no larger dimension.
    candidates = _right_endpoints_above(t, b, beta, depth, depth)
    if not candidates:
        candidates = _right_endpoints_above(t, b, beta, depth, 2 * depth)
    above = _nearest(candidates)
    if above is None:
        logger.warning("No Lyndon right endpoint above %s within length %d; lower bound is 0", t, 2 * depth)
        ent_lo = 0.0
    else:
        ent_lo = _floor_entropy(EPSequence.finite(above.word), beta, tol).lo

    # Upper bound: the survivor shift of the truncated floor contains ours,
    # and so does the plateau of the closest right endpoint below t.
    width = min(depth, len(b)) if isinstance(b, TruncatedWord) else depth
    ent_hi = _floor_entropy(EPSequence.finite(_digits(b, width)), beta, tol).hi
    if index >= 0:
        below = catalog[index]
        ent_hi = min(ent_hi, _floor_entropy(EPSequence.finite(below.word), beta, tol).hi)

    ent_lo = min(ent_lo, ent_hi)
    lo, hi = _ratio_bounds(ent_lo, ent_hi, beta)
    return DimensionEstimate(lo, hi, EstimateMethod.BRACKETED, ent_lo, ent_hi, depth)


def dimension(
    t: FieldElement,
    beta: MultinacciBeta,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
    horizon: int = DEFAULT_HORIZON,
) -> DimensionEstimate:
    """
    Dimension of the survivor set ``{x : T^n(x) >= t for all n}``.

    Args:
        t: Point of [0, 1).
        beta: Base.
        depth: Lyndon enumeration depth L.
        tol: Entropy bracket tolerance.
        horizon: Orbit length explored before giving up on periodicity.

    Returns:
        zero_tail from ``1 - 1/beta`` on; exact_sft when the plateau of t is
        known (an enumerated interval, a drop witness of length at most
        ``2 * depth`` naming the interval, or a purely periodic member with
        period at most ``2 * depth``); bracketed otherwise.
    """
    _check_point(t, beta)
    if t >= beta.threshold:
        return _zero_tail(depth)
    if t.is_zero:
        return _full(beta, depth)

    location = locate_interval(t, beta, depth)
    if isinstance(location, Found):
        return _plateau_estimate(location.interval.word, beta, tol, depth)

    b = greedy_expand(t, horizon)
    witness = _drop_witness(t, b)
    if witness is not None and witness <= 2 * depth:
        word = _digits(b, witness)
        if not is_lyndon_word(word, beta):
            raise InvariantViolation(f"Orbit of {t} drops at step {witness} but {word!r} is not Lyndon")
        return _plateau_estimate(word, beta, tol, depth)
    if (witness is None and isinstance(b, EPSequence) and _is_right_endpoint(b)
            and len(b.period) <= 2 * depth):
        return _plateau_estimate(b.period, beta, tol, depth)
    return _bracket(t, b, beta, depth, tol)


# ============================================================================
# Experiments
# ============================================================================

@dataclasses.dataclass(slots=True, frozen=True)
class StaircaseRow:
    """A grid point with its monotone-clamped estimate and the raw one."""
    t: FieldElement
    estimate: DimensionEstimate
    raw: DimensionEstimate


def staircase(
    beta: MultinacciBeta,
    t_grid: Iterable[FieldElement],
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
    horizon: int = DEFAULT_HORIZON,
    jobs: int = 1,
) -> List[StaircaseRow]:
    """
    Sample the dimension function on a grid, sorted by t.

    Brackets are reconciled with the monotonicity of the dimension: ``hi`` is
    made nonincreasing from the left and ``lo`` from the right.

    Raises:
        InvariantViolation: reconciled brackets cross.
    """
    points = sorted(t_grid, key=functools.cmp_to_key(lambda a, b: int(a.compare(b))))
    raw = run_partitioned(lambda t: dimension(t, beta, depth, tol, horizon), points, jobs)

    his: List[float] = []
    for est in raw:
        his.append(min(est.hi, his[-1]) if his else est.hi)
    los: List[float] = [0.0] * len(raw)
    floor = 0.0
    for i in range(len(raw) - 1, -1, -1):
        floor = max(floor, raw[i].lo)
        los[i] = floor

    rows = []
    for t, est, lo, hi in zip(points, raw, los, his):
        if lo > hi:
            raise InvariantViolation(f"Dimension brackets cross at {t}: [{lo}, {hi}]")
        rows.append(StaircaseRow(t, dataclasses.replace(est, lo=lo, hi=hi), est))
    return rows


@dataclasses.dataclass(slots=True, frozen=True)
class SupReport:
    """Largest enumerated right endpoint below the threshold and its distance to it."""
    value: FieldElement
    gap: FieldElement
    word: Optional[str]
    depth: int


def sup_E(beta: MultinacciBeta, depth: int = DEFAULT_DEPTH) -> SupReport:
    """Lower bound on ``sup E = 1 - 1/beta`` from right endpoints of length <= depth."""
    threshold = beta.threshold
    best: Optional[LyndonInterval] = None
    for iv in reversed(lyndon_catalog(beta, depth)):
        if iv.t_right < threshold:
            best = iv
            break
    value = best.t_right if best is not None else beta.zero
    report = SupReport(value, threshold - value, best.word if best else None, depth)
    logger.info("sup E for %s at depth %d: gap %.3e", beta.label, depth, float(report.gap))
    return report


def _as_radius(r: Radius, beta: MultinacciBeta) -> FieldElement:
    if isinstance(r, FieldElement):
        value = r
    else:
        value = beta.scalar(Fraction(r))
    if value.sign() is not Sign.POSITIVE:
        raise BetaDomainError(f"Radius must be positive, got {r}")
    return value


def local_dimension_profile(
    t: FieldElement,
    beta: MultinacciBeta,
    radii: Sequence[Radius],
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
    horizon: int = DEFAULT_HORIZON,
) -> List[Tuple[Radius, DimensionEstimate]]:
    """
    Lower proxies for ``dim(B cap (t, t + r))`` at a member t.

    For each radius, the estimate is the plateau dimension of the closest
    Lyndon right endpoint in ``(t, t + r)``. Endpoints come from the catalog
    and from approach words along b(t) up to length ``2 * depth``; the
    closest of them is used. A radius with no endpoint reports
    ``[0, dimension(t).hi]``.

    Raises:
        BetaDomainError: ``t`` is not a member.
    """
    membership = in_B(t, beta, depth, horizon)
    if not membership.is_member:
        raise BetaDomainError(f"Local dimension needs a member of B, {t} is {membership.verdict.value}")
    if not radii:
        return []
    bounds = [_as_radius(r, beta) for r in radii]

    # The closest endpoint above t has the largest plateau dimension, so each
    # radius either sees it or sees nothing.
    catalog = lyndon_catalog(beta, depth)
    index = _left_index(catalog, t)
    candidates = [iv for iv in catalog[index + 1: index + 2] if iv.t_right > t]
    digits = _digits(greedy_expand(t, horizon), 2 * depth)
    for word in approach_words(digits, beta, 2 * depth, min_len=depth + 1):
        iv = make_interval(word, beta)
        if iv.t_right > t:
            candidates.append(iv)
    nearest = _nearest(candidates)
    if nearest is not None:
        logger.debug("Closest right endpoint %s at distance %.3e", nearest.word, float(nearest.t_right - t))

    gap = nearest.t_right - t if nearest is not None else None
    profile: List[Tuple[Radius, DimensionEstimate]] = []
    for r, bound in zip(radii, bounds):
        if gap is None or gap >= bound:
            ceiling = dimension(t, beta, depth, tol, horizon)
            profile.append((r, DimensionEstimate(0.0, ceiling.hi, EstimateMethod.BRACKETED,
                                                 0.0, ceiling.entropy_hi, depth)))
        else:
            profile.append((r, _plateau_estimate(nearest.word, beta, tol, depth)))
    return profile


def tail_dimension(
    t: FieldElement,
    beta: MultinacciBeta,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
    horizon: int = DEFAULT_HORIZON,
) -> DimensionEstimate:
    """
    Estimate of ``dim(E cap [t, 1])``.

    The lower bound is the largest plateau dimension over right endpoints
    ``t_R >= t``, which is attained at the closest one; the upper bound is
    ``dimension(t).hi``.
    """
    _check_point(t, beta)
    if t >= beta.threshold:
        return _zero_tail(depth)
    own = dimension(t, beta, depth, tol, horizon)
    if own.method is EstimateMethod.EXACT_SFT:
        return own

    b = greedy_expand(t, horizon)
    nearest = _nearest(_right_endpoints_above(t, b, beta, depth, 2 * depth, strict=False))
    if nearest is None:
        return DimensionEstimate(0.0, own.hi, EstimateMethod.BRACKETED, 0.0, own.entropy_hi, depth)
    est = _plateau_estimate(nearest.word, beta, tol, depth)
    lo = min(est.lo, own.hi)
    return DimensionEstimate(lo, own.hi, EstimateMethod.BRACKETED, min(est.entropy_lo, own.entropy_hi),
                             own.entropy_hi, depth, nearest.word)
