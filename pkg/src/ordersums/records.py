"""CSV and JSON encodings of :class:`~ordersums.bounds.BoundReport` lists.

CSV columns are ``n,t,l,check_id,lhs,rhs,holds,tight,witness,gap``.  Fractions
are written ``a/b`` (``b`` may be 1); the COROLLARY pair operands are two
fractions joined by ``;``.  The ``holds`` column is ``true``/``false`` for
decided reports and ``vacuous``, ``n/a`` or ``error`` otherwise.

JSON is an array of objects with the same fields plus ``verdict`` and
``note``; a fraction is ``["a", "b"]`` and a pair is a list of two of those.
Parsing JSON gives back the original reports exactly.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

from .bounds import BoundReport, CheckId, Operand, Verdict

CSV_COLUMNS = ("n", "t", "l", "check_id", "lhs", "rhs", "holds", "tight", "witness", "gap")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def _csv_operand(x: Operand) -> str:
    if x is None:
        return ""
    if isinstance(x, tuple):
        return ";".join(format_fraction(v) for v in x)
    return format_fraction(x)


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def _csv_holds(r: BoundReport) -> str:
    if r.verdict is Verdict.HOLDS:
        return "true"
    if r.verdict is Verdict.FAILS:
        return "false"
    return r.verdict.value


def csv_row(r: BoundReport) -> list[str]:
    return [
        str(r.n), str(r.t), str(r.l), r.check_id.value,
        _csv_operand(r.lhs), _csv_operand(r.rhs), _csv_holds(r), _bool(r.tight),
        r.witness or "", _csv_operand(r.gap),
    ]


def to_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(csv_row(r))
    return buf.getvalue()


def read_csv_rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def _json_operand(x: Operand) -> Any:
    if x is None:
        return None
    if isinstance(x, tuple):
        return [_json_operand(v) for v in x]
    return [str(x.numerator), str(x.denominator)]


def _from_json_operand(x: Any) -> Operand:
    if x is None:
        return None
    if isinstance(x[0], list):
        return tuple(Fraction(int(a), int(b)) for a, b in x)
    return Fraction(int(x[0]), int(x[1]))


def report_to_dict(r: BoundReport) -> dict[str, Any]:
    return {
        "n": r.n,
        "t": r.t,
        "l": r.l,
        "check_id": r.check_id.value,
        "lhs": _json_operand(r.lhs),
        "rhs": _json_operand(r.rhs),
        "holds": r.holds,
        "tight": r.tight,
        "witness": r.witness,
        "gap": _json_operand(r.gap),
        "verdict": r.verdict.value,
        "note": r.note,
    }


def report_from_dict(d: dict[str, Any]) -> BoundReport:
    return BoundReport(
        n=d["n"],
        t=d["t"],
        l=d["l"],
        check_id=CheckId(d["check_id"]),
        verdict=Verdict(d["verdict"]),
        lhs=_from_json_operand(d["lhs"]),
        rhs=_from_json_operand(d["rhs"]),
        witness=d["witness"],
        note=d.get("note", ""),
    )


def to_json(reports: list[BoundReport]) -> str:
    """One report object per line inside a JSON array."""
    if not reports:
        return "[]\n"
    return "[\n" + ",\n".join(json.dumps(report_to_dict(r)) for r in reports) + "\n]\n"


def from_json(text: str) -> list[BoundReport]:
    return [report_from_dict(d) for d in json.loads(text)]
