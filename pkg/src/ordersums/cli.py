"""Command-line front end.

Usage:
    ordersums compute 6,2                 # m, psi and order distribution of Z6 x Z2
    ordersums compute cyclic:360
    ordersums enumerate 16                # the 5 abelian groups of order 16
    ordersums verify --checks main,sqrt --range 2..100 --format csv
    ordersums extremal 2..64              # least-m non-cyclic group per n
    ordersums registry --out expected_failures.json

Exit codes: 0 clean (or only registered failures), 1 unexpected failure,
2 usage error, 3 cap or resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .abelian import (
    DEFAULT_CLASS_CAP,
    AbelianGroup,
    cyclic_group,
    enumerate_abelian_groups,
    from_cyclic_factors,
    invariant_factor_form,
    is_cyclic,
)
from .bounds import MIN_N, PHI_CHECKS, CheckId, SweepConfig, Verdict, extremal, group_values, summarize, sweep
from .errors import CapExceededError, DomainError, NoNonCyclicGroupError
from .numtheory import two_adic_split
from .ordersum import DEFAULT_ORACLE_CAP, m_bruteforce, m_group, order_distribution
from .records import format_fraction, to_csv, to_json
from .registry import DEFAULT_COVERAGE, build_registry, load_registry, unexpected_failures

EXIT_OK, EXIT_UNEXPECTED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

CHECK_ALIASES = {
    "all": tuple(CheckId),
    "phi": PHI_CHECKS,
}


class GroupSpecError(DomainError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_Z_FACTOR = re.compile(r"\s*[Zz]\s*(\d+)\s*")


def parse_group_spec(spec: str) -> AbelianGroup:
    """Parse ``cyclic:N``, a comma list ``6,2`` or a product ``Z6xZ2`` /
    ``Z6 x Z2``."""
    text = spec.strip()
    offset = len(spec) - len(spec.lstrip())
    if not text:
        raise GroupSpecError("empty group spec", 0)
    if text.lower().startswith("cyclic:"):
        body = text[len("cyclic:"):]
        if not body.strip().isdigit():
            raise GroupSpecError(f"expected a positive integer, got {body!r}", offset + len("cyclic:"))
        n = int(body)
        if n < 1:
            raise GroupSpecError("cyclic order must be >= 1", offset + len("cyclic:"))
        return cyclic_group(n)
    if text[0] in "Zz":
        orders, pos = [], 0
        while True:
            m = _Z_FACTOR.match(text, pos)
            if m is None:
                raise GroupSpecError("expected a factor like Z6", offset + pos)
            orders.append((int(m.group(1)), offset + m.start(1)))
            pos = m.end()
            if pos == len(text):
                break
            if text[pos] not in "xX*":
                raise GroupSpecError(f"expected 'x' between factors, got {text[pos]!r}", offset + pos)
            pos += 1
    else:
        orders, pos = [], 0
        for item in text.split(","):
            stripped = item.strip()
            if not stripped.isdigit():
                raise GroupSpecError(f"expected an integer, got {stripped!r}", offset + pos)
            orders.append((int(stripped), offset + pos + item.index(stripped)))
            pos += len(item) + 1
    for order, at in orders:
        if order < 2:
            raise GroupSpecError(f"cyclic factor order must be >= 2, got {order}", at)
    return from_cyclic_factors([o for o, _ in orders])


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if m is None:
        raise argparse.ArgumentTypeError(f"range must look like A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_checks(text: str) -> tuple[CheckId, ...]:
    out: list[CheckId] = []
    for raw in text.split(","):
        name = raw.strip()
        if not name:
            continue
        if name.lower() in CHECK_ALIASES:
            out.extend(CHECK_ALIASES[name.lower()])
            continue
        try:
            out.append(CheckId(name.upper()))
        except ValueError:
            valid = ", ".join([c.value.lower() for c in CheckId] + list(CHECK_ALIASES))
            raise argparse.ArgumentTypeError(f"unknown check {name!r} (choose from {valid})") from None
    return tuple(sorted(set(out), key=lambda c: c.rank))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def decimal(x: Fraction) -> str:
    return f"{float(x):.6g}"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _table(rows: list[dict[str, str]], fmt: str) -> str:
    if not rows:
        return "" if fmt != "json" else "[]\n"
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    cols = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols).rstrip()]
    lines += ["  ".join(r[c].ljust(widths[c]) for c in cols).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


# -- subcommands -------------------------------------------------------------

def cmd_compute(args: argparse.Namespace) -> int:
    g = parse_group_spec(args.spec)
    m = m_group(g, cross_check=True)
    dist = order_distribution(g)
    lines = [
        f"group: {g.signature}",
        f"invariant factors: {invariant_factor_form(g)}",
        f"order: {g.order}",
        f"cyclic: {'true' if is_cyclic(g) else 'false'}",
        f"m={m} (~{decimal(m)})",
        f"psi={dist.order_sum()}",
        f"distribution={dist}",
    ]
    if g.order <= args.oracle_cap:
        brute = m_bruteforce(g, args.oracle_cap)
        lines.append(f"oracle: {'agrees' if brute == m else f'DISAGREES ({brute})'}")
        if brute != m:
            print("\n".join(lines))
            return EXIT_UNEXPECTED
    else:
        lines.append(f"oracle: skipped (order above {args.oracle_cap})")
    print("\n".join(lines))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    rows = [
        {
            "signature": g.signature,
            "invariant_factors": invariant_factor_form(g),
            "m": str(m),
            "cyclic": "true" if is_cyclic(g) else "false",
        }
        for g, m in group_values(args.n, args.cap)
    ]
    _emit(_table(rows, args.format), args.out)
    return EXIT_OK


def cmd_extremal(args: argparse.Namespace) -> int:
    lo, hi = args.range
    if lo < 2:
        raise DomainError(f"extremal needs n >= 2, got range starting at {lo}")
    rows = []
    for n in range(lo, hi + 1):
        t, l = two_adic_split(n)
        bound = Fraction(3 + t, 2 + t)
        row = {"n": str(n), "t": str(t), "l": str(l), "group": "", "invariant_factors": "",
               "m": "", "ratio": "", "bound": format_fraction(bound), "tight": "false",
               "status": "vacuous"}
        try:
            sig, m = extremal(n, args.cap)
        except NoNonCyclicGroupError:
            rows.append(row)
            continue
        ratio = m / group_values(n, args.cap)[0][1]
        g = next(g for g, _ in group_values(n, args.cap) if g.signature == sig)
        row.update(group=sig, invariant_factors=invariant_factor_form(g), m=format_fraction(m),
                   ratio=format_fraction(ratio), tight="true" if ratio == bound else "false",
                   status="ok")
        rows.append(row)
    _emit(_table(rows, args.format), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    lo, hi = args.range
    checks = args.checks
    if not checks:
        parser.error("--checks selects no check")
    need = min(MIN_N[c] for c in checks)
    if lo < need:
        parser.error(f"--range must start at n >= {need} for checks {','.join(c.value.lower() for c in checks)}")
    registry = load_registry(args.expected_failures)
    config = SweepConfig(cap=args.cap, oracle_cap=args.oracle_cap)
    reports = sweep(lo, hi, checks, config, workers=args.jobs)
    text = to_csv(reports) if args.format == "csv" else to_json(reports)
    _emit(text, args.out)
    summary = summarize(reports)
    unexpected = unexpected_failures(reports, registry)
    for line in summary.lines():
        print(line, file=sys.stderr)
    for r in unexpected[:20]:
        print(f"unexpected failure: n={r.n} {r.check_id.value}", file=sys.stderr)
    if len(unexpected) > 20:
        print(f"... {len(unexpected) - 20} more unexpected failures", file=sys.stderr)
    errors = [r for r in reports if r.verdict is Verdict.ERROR]
    for r in errors[:5]:
        print(f"error: n={r.n} {r.check_id.value}: {r.note}", file=sys.stderr)
    if errors:
        return EXIT_CAP
    return EXIT_UNEXPECTED if unexpected else EXIT_OK


def cmd_registry(args: argparse.Namespace) -> int:
    coverage = dict(DEFAULT_COVERAGE)
    if args.limit is not None:
        coverage = {c: min(hi, args.limit) for c, hi in coverage.items()}
    reg = build_registry(coverage)
    _emit(json.dumps(reg.to_dict(), indent=1) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordersums",
        description="Exact element-order sums of finite abelian groups and bound verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="m(G), psi(G) and the order distribution of one group")
    p.add_argument("spec", help="cyclic:N, a comma list like 6,2, or Z6xZ2")
    p.add_argument("--oracle-cap", type=_positive, default=DEFAULT_ORACLE_CAP,
                   help="brute-force cross-check for groups up to this order (default %(default)s)")

    p = sub.add_parser("enumerate", help="list the abelian groups of order N")
    p.add_argument("n", type=_positive)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CLASS_CAP, help="isomorphism class cap")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="sweep the bound checks over a range of n")
    p.add_argument("--checks", type=parse_checks, default=tuple(CheckId),
                   help="comma list of check ids, 'phi' or 'all' (default all)")
    p.add_argument("--range", type=parse_range, required=True, help="inclusive range A..B")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default standard output)")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CLASS_CAP, help="isomorphism class cap")
    p.add_argument("--oracle-cap", type=_positive, default=None,
                   help="brute-force cross-check of enumerated groups up to this order")
    p.add_argument("--expected-failures", default=None, help="registry JSON (default: shipped)")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")

    p = sub.add_parser("extremal", help="least-m non-cyclic group for each n in a range")
    p.add_argument("range", type=parse_range)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CLASS_CAP)
    p.add_argument("--out", default=None)

    p = sub.add_parser("registry", help="recompute the expected-failure registry")
    p.add_argument("--out", default=None)
    p.add_argument("--limit", type=_positive, default=None, help="clip every covered range to 1..LIMIT")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return cmd_compute(args)
        if args.command == "enumerate":
            return cmd_enumerate(args)
        if args.command == "extremal":
            return cmd_extremal(args)
        if args.command == "verify":
            return cmd_verify(args, parser)
        return cmd_registry(args)
    except CapExceededError as exc:
        print(f"ordersums: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"ordersums: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ordersums: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
