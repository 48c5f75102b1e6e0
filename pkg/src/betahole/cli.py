"""
Command-line front end.

    betahole delta --m 2
    betahole dim --m 1 --t 1/4 --depth 12
    betahole staircase --m 1 --grid 0:2/5:1/20 --format csv

Payloads go to stdout as compact sorted JSON or as CSV; logs go to stderr.
Exit codes: 0 on success (including unknown verdicts), 1 on domain or usage
errors, 2 when an internal cross-check fails.
"""

import argparse
import dataclasses
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from .core.errors import BetaDomainError, InvariantViolation
from .core.expansion import (
    DEFAULT_HORIZON,
    greedy_expand,
    greedy_expand_unit,
    is_delta_valid,
    parse_value,
    quasi_greedy_expand,
)
from .core.field import MULTINACCI, SPARSE, FieldElement, MultinacciBeta, make_beta
from .core.primitives import TruncatedWord
from .core.symbolic import EPSequence
from .dynamics.bifurcation import (
    dimension,
    in_B,
    in_B_prime,
    in_E,
    in_E_prime,
    local_dimension_profile,
    locate_interval,
    staircase,
    sup_E,
    tail_dimension,
)
from .dynamics.sft import build_survivor_sft, count_blocks
from .dynamics.spectral import DEFAULT_TOL, entropy_eigvals, entropy_spectral
from .lyndon.intervals import DEFAULT_DEPTH, coverage_measure, enumerate_lyndon, verify_disjoint
from .lyndon.words import is_lyndon_word
from .oracle import brute_count
from .reporting import (
    DEFAULT_PRECISION_DIGITS,
    canonical_json,
    records_csv,
    render_element,
    render_estimate,
    render_expansion,
    render_interval,
    render_location,
    render_membership,
    render_sup,
    staircase_csv,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INVARIANT = 2

_DEFAULT_RADII = "1/10,1/100,1/1000"


class UsageError(Exception):
    """Raised instead of argparse's own exit so usage errors map to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Global flags shared by every subcommand."""
    m: str = "1"
    family: str = MULTINACCI
    depth: int = DEFAULT_DEPTH
    horizon: int = DEFAULT_HORIZON
    tol: float = DEFAULT_TOL
    precision_digits: int = DEFAULT_PRECISION_DIGITS
    output_format: str = "json"
    jobs: int = 1
    emit_graph: Optional[str] = None
    verbosity: int = 0

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise BetaDomainError(f"--depth must be positive, got {self.depth}")
        if self.horizon < 1:
            raise BetaDomainError(f"--horizon must be positive, got {self.horizon}")
        if not self.tol > 0:
            raise BetaDomainError(f"--tol must be positive, got {self.tol}")
        if self.precision_digits < 0:
            raise BetaDomainError(f"--precision-digits must be nonnegative, got {self.precision_digits}")
        if self.jobs < 1:
            raise BetaDomainError(f"--jobs must be positive, got {self.jobs}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            m=args.m,
            family=args.family,
            depth=args.depth,
            horizon=args.horizon,
            tol=args.tol,
            precision_digits=args.precision_digits,
            output_format=args.format,
            jobs=args.jobs,
            emit_graph=args.emit_graph,
            verbosity=args.verbose,
        )

    @property
    def beta(self) -> MultinacciBeta:
        return make_beta(self.m, self.family)


@dataclasses.dataclass
class CommandOutput:
    """A JSON payload plus optional row records or ready CSV text for ``--format csv``."""
    payload: Dict[str, Any]
    records: Optional[List[Dict[str, Any]]] = None
    csv_text: Optional[str] = None

    def render(self, output_format: str) -> str:
        if output_format == "json":
            return canonical_json(self.payload) + "\n"
        if self.csv_text is not None:
            return self.csv_text
        return records_csv(self.records if self.records is not None else [self.payload])


Handler = Callable[[RunConfig, argparse.Namespace], CommandOutput]


# ============================================================================
# Helpers
# ============================================================================

def _point(config: RunConfig, text: str) -> FieldElement:
    return parse_value(text, config.beta)


def _grid(config: RunConfig, args: argparse.Namespace) -> List[FieldElement]:
    beta = config.beta
    if args.points:
        return [parse_value(p, beta) for p in args.points.split(",") if p.strip()]
    parts = args.grid.split(":")
    if len(parts) != 3:
        raise BetaDomainError(f"--grid must look like a:b:step, got {args.grid!r}")
    try:
        start, stop, step = (Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise BetaDomainError(f"--grid parts must be rationals, got {args.grid!r}") from exc
    if step <= 0:
        raise BetaDomainError(f"--grid step must be positive, got {step}")
    points = []
    x = start
    while x <= stop:
        points.append(beta.scalar(x))
        x += step
    return points


def _emit_graph(config: RunConfig, lower: EPSequence) -> None:
    if not config.emit_graph:
        return
    sft = build_survivor_sft(lower, config.beta)
    with open(config.emit_graph, "w", encoding="utf-8") as handle:
        handle.write(sft.to_dot())
    logger.info("Wrote survivor graph to %s", config.emit_graph)


def _floor_for(config: RunConfig, t: FieldElement, word: Optional[str]) -> Optional[EPSequence]:
    if word is not None:
        return EPSequence.finite(word)
    if t >= config.beta.threshold:
        return None
    b = greedy_expand(t, config.horizon)
    prefix = b.prefix if isinstance(b, TruncatedWord) else b.prefix(config.depth)
    return EPSequence.finite(prefix[: config.depth])


# ============================================================================
# Subcommands
# ============================================================================

def cmd_delta(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    beta = config.beta
    payload: Dict[str, Any] = {"delta": str(beta.delta)}
    if beta.experimental:
        payload["experimental"] = True
    return CommandOutput(payload)


def cmd_expand(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    beta = config.beta
    if args.unit:
        return CommandOutput({"kind": "greedy_unit", **render_expansion(greedy_expand_unit(beta, config.horizon))})
    if args.t is None:
        raise BetaDomainError("expand needs --t or --unit")
    t = _point(config, args.t)
    if args.quasi:
        b, kind = quasi_greedy_expand(t, config.horizon), "quasi_greedy"
    else:
        b, kind = greedy_expand(t, config.horizon), "greedy"
    return CommandOutput({"t": render_element(t, config.precision_digits), "kind": kind, **render_expansion(b)})


def cmd_lyndon_check(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    return CommandOutput({"lyndon": is_lyndon_word(args.word, config.beta)})


def cmd_lyndon_enum(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    intervals = enumerate_lyndon(config.beta, config.depth, config.jobs)
    rendered = [render_interval(iv, config.precision_digits) for iv in intervals]
    payload = {"count": len(intervals), "depth": config.depth, "intervals": rendered}
    return CommandOutput(payload, records=rendered)


def cmd_dim(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    t = _point(config, args.t)
    est = dimension(t, config.beta, config.depth, config.tol, config.horizon)
    lower = _floor_for(config, t, est.word if est.word != "0" else None)
    if lower is not None:
        _emit_graph(config, lower)
    return CommandOutput({"t": render_element(t, config.precision_digits), **render_estimate(est)})


def cmd_member(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    beta = config.beta
    t = _point(config, args.t)
    result_b = in_B(t, beta, config.depth, config.horizon)
    payload = {
        "t": render_element(t, config.precision_digits),
        "status": result_b.verdict.value,
        "in_E": render_membership(in_E(t, beta, config.horizon)),
        "in_B": render_membership(result_b),
        "in_E_prime": render_membership(in_E_prime(t, beta, config.horizon)),
        "in_B_prime": render_membership(in_B_prime(t, beta, config.depth, config.horizon)),
        "location": render_location(locate_interval(t, beta, config.depth), config.precision_digits),
    }
    return CommandOutput(payload)


def cmd_staircase(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    rows = staircase(config.beta, _grid(config, args), config.depth, config.tol, config.horizon, config.jobs)
    payload = {
        "depth": config.depth,
        "rows": [
            {
                "t": render_element(row.t, config.precision_digits),
                "estimate": render_estimate(row.estimate),
                "raw": render_estimate(row.raw),
            }
            for row in rows
        ],
    }
    return CommandOutput(payload, csv_text=staircase_csv(rows, config.precision_digits))


def cmd_sup_e(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    beta = config.beta
    report = sup_E(beta, config.depth)
    payload = render_sup(report, config.precision_digits)
    payload["threshold"] = render_element(beta.threshold, config.precision_digits)
    return CommandOutput(payload)


def cmd_coverage(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    beta = config.beta
    intervals = enumerate_lyndon(beta, config.depth, config.jobs)
    payload = {
        "count": len(intervals),
        "depth": config.depth,
        "coverage": render_element(coverage_measure(intervals, beta), config.precision_digits),
        "threshold": render_element(beta.threshold, config.precision_digits),
        "disjoint": verify_disjoint(intervals).disjoint,
        "disjoint_closed": verify_disjoint(intervals, closed=True).disjoint,
    }
    return CommandOutput(payload)


def cmd_local_dim(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    t = _point(config, args.t)
    try:
        radii = [Fraction(r.strip()) for r in args.radii.split(",") if r.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise BetaDomainError(f"--radii must be rationals, got {args.radii!r}") from exc
    profile = local_dimension_profile(t, config.beta, radii, config.depth, config.tol, config.horizon)
    rows = [{"r": str(r), **render_estimate(est)} for r, est in profile]
    return CommandOutput({"t": render_element(t, config.precision_digits), "profile": rows}, records=rows)


def cmd_tail_dim(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    t = _point(config, args.t)
    est = tail_dimension(t, config.beta, config.depth, config.tol, config.horizon)
    return CommandOutput({"t": render_element(t, config.precision_digits), **render_estimate(est)})


def _selftest_checks(config: RunConfig) -> Dict[str, bool]:
    beta = config.beta
    depth = min(config.depth, 8)
    checks: Dict[str, bool] = {}

    checks["delta"] = is_delta_valid(beta.delta) and quasi_greedy_expand(beta.one, config.horizon) == beta.delta

    intervals = enumerate_lyndon(beta, depth, config.jobs)
    checks["disjoint"] = verify_disjoint(intervals).disjoint and verify_disjoint(intervals, closed=True).disjoint

    floors = [EPSequence.finite("")] + [iv.floor_sequence() for iv in intervals[:6]]
    counts_ok = True
    spectra_ok = True
    for lower in floors:
        sft = build_survivor_sft(lower, beta)
        k = sft.block_len
        for n in range(1, min(k + 6, 16) + 1):
            counts_ok &= brute_count(lower, beta, n) == count_blocks(sft, n)
        if 0 < len(sft.states) <= 12:
            bound = entropy_spectral(sft, config.tol)
            spectra_ok &= bound.lo - 1e-9 <= entropy_eigvals(sft) <= bound.hi + 1e-9
    checks["oracle_counts"] = counts_ok
    checks["entropy_crosscheck"] = spectra_ok

    # in_B raises on any disagreement between the orbit and the intervals.
    decided = 0
    for q in range(2, 13):
        for p in range(q):
            decided += in_B(beta.scalar(Fraction(p, q)), beta, depth, config.horizon).is_decided
    checks["membership_routes"] = decided > 0
    return checks


def cmd_selftest(config: RunConfig, args: argparse.Namespace) -> CommandOutput:
    checks = _selftest_checks(config)
    failed = sorted(name for name, ok in checks.items() if not ok)
    if failed:
        raise InvariantViolation(f"Self-test failed: {', '.join(failed)}")
    return CommandOutput({"checks": checks, "passed": True})


COMMANDS: Dict[str, Handler] = {
    "delta": cmd_delta,
    "expand": cmd_expand,
    "lyndon-check": cmd_lyndon_check,
    "lyndon-enum": cmd_lyndon_enum,
    "dim": cmd_dim,
    "member": cmd_member,
    "staircase": cmd_staircase,
    "sup-e": cmd_sup_e,
    "coverage": cmd_coverage,
    "local-dim": cmd_local_dim,
    "tail-dim": cmd_tail_dim,
    "selftest": cmd_selftest,
}


# ============================================================================
# Parser
# ============================================================================

def _common_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--m", default="1", help="Multinacci order or 'two' (default: 1)")
    common.add_argument("--family", choices=(MULTINACCI, SPARSE), default=MULTINACCI,
                        help="Base family; sparse is experimental")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                        help=f"Lyndon enumeration depth (default: {DEFAULT_DEPTH})")
    common.add_argument("--horizon", type=int, default=DEFAULT_HORIZON,
                        help=f"Orbit steps before a verdict is unknown (default: {DEFAULT_HORIZON})")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help=f"Entropy bracket width (default: {DEFAULT_TOL})")
    common.add_argument("--precision-digits", type=int, default=DEFAULT_PRECISION_DIGITS,
                        help=f"Decimal places in rendered values (default: {DEFAULT_PRECISION_DIGITS})")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads for enumeration and sweeps")
    common.add_argument("--emit-graph", metavar="PATH", default=None,
                        help="Write the survivor graph in DOT format")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug output on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="betahole", description="Bifurcation sets of beta-transformations with a hole.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    add("delta", "Quasi-greedy expansion of 1")
    p = add("expand", "Greedy or quasi-greedy expansion of a point")
    p.add_argument("--t", help="Point: decimal, p/q, polynomial in b, or u(v)")
    p.add_argument("--quasi", action="store_true", help="Quasi-greedy instead of greedy")
    p.add_argument("--unit", action="store_true", help="Greedy expansion of 1")
    p = add("lyndon-check", "Test a word for the beta-Lyndon property")
    p.add_argument("--word", required=True)
    add("lyndon-enum", "Enumerate Lyndon intervals up to --depth")
    for name, help_text in (("dim", "Dimension of the survivor set"),
                            ("member", "Membership in E, B and the two-sided sets"),
                            ("tail-dim", "Dimension of E intersected with [t, 1]")):
        p = add(name, help_text)
        p.add_argument("--t", required=True)
    p = add("staircase", "Sample the dimension function on a grid")
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--grid", help="a:b:step with rational parts")
    grid.add_argument("--points", help="Comma separated points")
    add("sup-e", "Largest enumerated right endpoint below 1 - 1/beta")
    add("coverage", "Total length of the enumerated intervals")
    p = add("local-dim", "Local dimension profile at a member")
    p.add_argument("--t", required=True)
    p.add_argument("--radii", default=_DEFAULT_RADII, help=f"Comma separated radii (default: {_DEFAULT_RADII})")
    add("selftest", "Cross-check the library against the brute-force oracle")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, format="%(asctime)s - %(levelname)s - %(name)s - %(message)s")
    logging.getLogger("betahole").setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK

    _configure_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        output = COMMANDS[args.command](config, args)
        text = output.render(config.output_format)
    except InvariantViolation as exc:
        print(f"error: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
