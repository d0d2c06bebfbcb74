"""Report serialization: deterministic JSON payloads and lossy-marked CSV.

Exact rationals always serialize as {"num": ..., "den": ...} decimal
strings so no precision is laundered through floats; integers stay JSON
integers (arbitrary precision survives a round trip). CSV rows render
rationals as 15-significant-digit decimals and carry an explicit marker
column saying whether anything in the row was rounded.
"""

from __future__ import annotations

import io
import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from .blocks import BlockCountReport, WindowCheck
from .depolignac import APCertificate, CoverCheck, CoveringSystem, ScanReport
from .errors import ConfigError
from .sumset import RatioPoint, SumsetReport

__all__ = [
    "fraction_payload",
    "fraction_from_payload",
    "decimal15",
    "payload_json",
    "block_count_payload",
    "window_payload",
    "sumset_payload",
    "ratio_payload",
    "scan_payload",
    "covering_payload",
    "certificate_payload",
    "rows_to_csv",
    "payload_csv",
]


def fraction_payload(value: Fraction) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator)}


def fraction_from_payload(obj: dict) -> Fraction:
    try:
        return Fraction(int(obj["num"]), int(obj["den"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"not a rational payload: {obj!r}") from exc


def decimal15(value: Fraction | int | float) -> str:
    """Decimal rendering at 15 significant digits (CSV only; lossy)."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.15g}"
    with localcontext() as ctx:
        ctx.prec = 15
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def payload_json(payload: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _maybe_fraction(value: Fraction | None) -> dict | None:
    return None if value is None else fraction_payload(value)


def block_count_payload(report: BlockCountReport) -> dict:
    return {
        "x": report.x,
        "j": report.j,
        "b_count": report.b_count,
        "a_count": report.a_count,
        "b_lower_bound": _maybe_fraction(report.b_lower_bound),
        "ratio_exact": fraction_payload(report.ratio_exact),
        "conjecture_ratio": report.conjecture_ratio,
    }


def window_payload(check: WindowCheck) -> dict:
    return {
        "j": check.j,
        "lower": check.lower,
        "upper": check.upper,
        "holds": check.holds,
    }


def sumset_payload(report: SumsetReport) -> dict:
    return {
        "x": report.x,
        "j": report.j,
        "c_count": report.c_count,
        "s1_count": report.s1_count,
        "s2_count": report.s2_count,
        "s1_overlap": report.s1_overlap,
        "density": report.density,
        "sqrt_check": report.sqrt_check,
        "s1_bound": _maybe_fraction(report.s1_bound),
        "s2_bound": _maybe_fraction(report.s2_bound),
        "c_bound": _maybe_fraction(report.c_bound),
        "s1_legendre": report.s1_legendre,
    }


def ratio_payload(points: Sequence[RatioPoint]) -> list[dict]:
    return [
        {
            "x": p.x,
            "b_count": p.b_count,
            "c_count": p.c_count,
            "ratio": _maybe_fraction(p.ratio),
        }
        for p in points
    ]


def scan_payload(report: ScanReport) -> dict:
    return {
        "limit": report.limit,
        "members_scanned": report.members_scanned,
        "exceptions": [list(e) for e in report.exceptions],
        "representable_fraction": report.representable_fraction,
    }


def covering_payload(system: CoveringSystem, check: CoverCheck) -> dict:
    return {
        "system": system.to_json(),
        "lcm": system.lcm,
        "covers": check.covers,
        "uncovered": list(check.uncovered),
    }


def certificate_payload(cert: APCertificate) -> dict:
    return cert.to_json()


def rows_to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Render rows to CSV, appending a per-row `lossy` marker column.

    A row is marked lossy when it contains a Fraction or float that had to
    be rendered as a decimal; exact integers and strings keep `no`.
    """
    buf = io.StringIO()
    buf.write(",".join([*header, "lossy"]) + "\n")
    for row in rows:
        lossy = any(isinstance(v, (Fraction, float)) for v in row)
        cells = []
        for v in row:
            if isinstance(v, (Fraction, float, int)) and not isinstance(v, bool):
                cells.append(decimal15(v))
            elif v is None:
                cells.append("")
            else:
                cells.append(str(v))
        cells.append("yes" if lossy else "no")
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def payload_csv(payload: Any) -> str:
    """Flatten a payload produced by this module into CSV rows.

    Lists of per-x dicts become one row per x; a single dict becomes one
    row. Rational sub-objects render as 15-digit decimals.
    """
    records = payload if isinstance(payload, list) else [payload]
    if not records:
        return "\n"
    header = list(records[0].keys())
    rows = []
    for rec in records:
        row = []
        for key in header:
            value = rec.get(key)
            if isinstance(value, dict) and set(value) == {"num", "den"}:
                row.append(fraction_from_payload(value))
            elif isinstance(value, (dict, list)):
                row.append(json.dumps(value, sort_keys=True).replace(",", ";"))
            else:
                row.append(value)
        rows.append(row)
    return rows_to_csv(header, rows)
