"""
JSON and CSV rendering for command-line payloads.

Output is byte-stable: keys are sorted, floats are rounded to a fixed number
of decimals, field elements carry exact coefficients next to a decimal
truncated toward -inf from a certified enclosure.
"""

import csv
import io
import json
import math
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .core.expansion import Expansion
from .core.field import FieldElement
from .core.primitives import DimensionEstimate, MembershipResult, TruncatedWord
from .dynamics.bifurcation import AboveThreshold, Found, Location, StaircaseRow, SupReport
from .lyndon.intervals import LyndonInterval

DEFAULT_PRECISION_DIGITS = 30
FLOAT_DECIMALS = 15

STAIRCASE_COLUMNS = ("t_decimal", "t_exact", "dim_lo", "dim_hi", "method", "depth")


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def render_float(value: float) -> Optional[float]:
    """Round for output; infinities and NaN become null."""
    if not math.isfinite(value):
        return None
    rounded = round(value, FLOAT_DECIMALS)
    return 0.0 if rounded == 0 else rounded


def render_element(x: FieldElement, digits: int = DEFAULT_PRECISION_DIGITS) -> Dict[str, Any]:
    return {"coeffs": x.coefficient_strings(), "decimal": x.to_decimal(digits)}


def render_expansion(b: Expansion) -> Dict[str, Any]:
    if isinstance(b, TruncatedWord):
        return {"status": "truncated", "prefix": b.prefix, "horizon": b.horizon}
    return {"status": "periodic", "sequence": str(b), "preperiod": b.preperiod, "period": b.period}


def render_interval(iv: LyndonInterval, digits: int = DEFAULT_PRECISION_DIGITS) -> Dict[str, Any]:
    return {
        "word": iv.word,
        "length": iv.length,
        "t_left": render_element(iv.t_left, digits),
        "t_right": render_element(iv.t_right, digits),
    }


def render_estimate(est: DimensionEstimate) -> Dict[str, Any]:
    return {
        "dim_lo": render_float(est.lo),
        "dim_hi": render_float(est.hi),
        "method": est.method.value,
        "entropy_lo": render_float(est.entropy_lo),
        "entropy_hi": render_float(est.entropy_hi),
        "depth": est.depth_used,
        "word": est.word,
    }


def render_membership(result: MembershipResult) -> Dict[str, Any]:
    return {
        "status": result.verdict.value,
        "witness": result.witness,
        "horizon": result.horizon,
        "word": result.word,
    }


def render_location(location: Location, digits: int = DEFAULT_PRECISION_DIGITS) -> Dict[str, Any]:
    if isinstance(location, Found):
        return {"status": "found", "interval": render_interval(location.interval, digits)}
    if isinstance(location, AboveThreshold):
        return {"status": "above_threshold", "threshold": render_element(location.threshold, digits)}
    return {"status": "not_covered", "depth": location.depth}


def render_sup(report: SupReport, digits: int = DEFAULT_PRECISION_DIGITS) -> Dict[str, Any]:
    return {
        "value": render_element(report.value, digits),
        "gap": render_element(report.gap, digits),
        "word": report.word,
        "depth": report.depth,
    }


# ============================================================================
# CSV
# ============================================================================

def _write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if value is None else value for value in row])
    return buffer.getvalue()


def staircase_csv(rows: Sequence[StaircaseRow], digits: int = DEFAULT_PRECISION_DIGITS) -> str:
    """Columns ``t_decimal, t_exact, dim_lo, dim_hi, method, depth``."""
    return _write_csv(STAIRCASE_COLUMNS, (
        (row.t.to_decimal(digits), str(row.t), render_float(row.estimate.lo),
         render_float(row.estimate.hi), row.estimate.method.value, row.estimate.depth_used)
        for row in rows
    ))


def _flatten(payload: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            flat[name] = ";".join(str(v) for v in value)
        else:
            flat[name] = value
    return flat


def records_csv(records: Sequence[Dict[str, Any]]) -> str:
    """Flatten nested payloads into dotted columns, one row per record."""
    flat: List[Dict[str, Any]] = [_flatten(r) for r in records]
    header = sorted({key for row in flat for key in row})
    return _write_csv(header, ([row.get(key) for key in header] for row in flat))
