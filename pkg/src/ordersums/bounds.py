"""Per-n verification of the element-order-sum inequalities.

Every check returns a :class:`BoundReport` whose verdict is decided by an
exact comparison of the stored ``lhs`` and ``rhs`` operands, so any report can
be re-judged from its operands alone (:func:`decide`).  Checks never assert;
a statement that fails at some ``n`` produces a ``FAILS`` report.
"""

from __future__ import annotations

import enum
import operator
from collections import Counter
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .abelian import DEFAULT_CLASS_CAP, AbelianGroup, enumerate_abelian_groups, from_cyclic_factors
from .errors import CapExceededError, DomainError, NoNonCyclicGroupError
from .numtheory import Factorization, euler_phi, factorize, smallest_prime_factors, two_adic_split
from .ordersum import m_bruteforce, m_cyclic, m_group

# ``lhs``/``rhs`` hold a Fraction, a (lower, upper) pair for COROLLARY, or None.
Operand = Fraction | tuple[Fraction, Fraction] | None

WITNESS_SEPARATOR = " | "


class CheckId(str, enum.Enum):
    INITIAL = "INITIAL"
    MAIN = "MAIN"
    SHARPNESS = "SHARPNESS"
    SQRT = "SQRT"
    PHI_RATIO = "PHI_RATIO"
    PHI_FLOOR = "PHI_FLOOR"
    M_FLOOR = "M_FLOOR"
    INV_P_FLOOR = "INV_P_FLOOR"
    ODD_LOWER = "ODD_LOWER"
    COROLLARY = "COROLLARY"

    @property
    def rank(self) -> int:
        return _RANK[self]


_RANK = {c: i for i, c in enumerate(CheckId)}
PHI_CHECKS = (CheckId.PHI_RATIO, CheckId.PHI_FLOOR, CheckId.M_FLOOR, CheckId.INV_P_FLOOR)


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    VACUOUS = "vacuous"
    NOT_APPLICABLE = "n/a"
    ERROR = "error"


def _corollary_relation(lhs: tuple[Fraction, Fraction], rhs: tuple[Fraction, Fraction]) -> bool:
    (lo, hi), (lower, upper) = lhs, rhs
    return lower < lo and hi <= upper


# holds  <=>  RELATION[check](lhs, rhs)
RELATION: dict[CheckId, Callable[[object, object], bool]] = {
    CheckId.INITIAL: operator.lt,  # m(Z_n) < min over non-cyclic m(G)
    CheckId.MAIN: operator.ge,  # min m(G)/m(Z_n) >= (3+t)/(2+t)
    CheckId.SHARPNESS: operator.eq,
    CheckId.SQRT: operator.lt,  # squared, cross-multiplied integers
    CheckId.PHI_RATIO: operator.gt,
    CheckId.PHI_FLOOR: operator.ge,
    CheckId.M_FLOOR: operator.ge,
    CheckId.INV_P_FLOOR: operator.gt,
    CheckId.ODD_LOWER: operator.gt,  # m(Z_n) > max m(G)/(p-1)
    CheckId.COROLLARY: _corollary_relation,
}


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one check at one ``n``.

    ``tight`` and ``gap`` are derived from the operands: ``tight`` means the
    compared sides are equal (the upper side for COROLLARY), ``gap`` is the
    absolute difference (per side for COROLLARY).
    """

    n: int
    t: int
    l: int  # noqa: E741
    check_id: CheckId
    verdict: Verdict
    lhs: Operand = None
    rhs: Operand = None
    witness: str | None = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict in (Verdict.HOLDS, Verdict.VACUOUS)

    @property
    def decided(self) -> bool:
        return self.verdict in (Verdict.HOLDS, Verdict.FAILS)

    @property
    def tight(self) -> bool:
        if not self.decided:
            return False
        if isinstance(self.lhs, tuple):
            return self.lhs[1] == self.rhs[1]
        return self.lhs == self.rhs

    @property
    def gap(self) -> Operand:
        if not self.decided:
            return None
        if isinstance(self.lhs, tuple):
            return (abs(self.lhs[0] - self.rhs[0]), abs(self.rhs[1] - self.lhs[1]))
        return abs(self.lhs - self.rhs)

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.n, self.check_id.rank)


def decide(check_id: CheckId, lhs: Operand, rhs: Operand) -> bool:
    return bool(RELATION[check_id](lhs, rhs))


def _judged(n: int, check_id: CheckId, lhs: Operand, rhs: Operand, witness: str | None = None,
            note: str = "", split: tuple[int, int] | None = None) -> BoundReport:
    t, l = split or two_adic_split(n)
    verdict = Verdict.HOLDS if decide(check_id, lhs, rhs) else Verdict.FAILS
    return BoundReport(n, t, l, check_id, verdict, lhs, rhs, witness, note)


def _special(n: int, check_id: CheckId, verdict: Verdict, note: str, lhs: Operand = None,
             rhs: Operand = None, witness: str | None = None) -> BoundReport:
    t, l = two_adic_split(max(n, 1))
    return BoundReport(n, t, l, check_id, verdict, lhs, rhs, witness, note)


# -- shared machinery --------------------------------------------------------

_SPF: list[int] = []


def ensure_sieve(limit: int) -> None:
    """Grow the shared smallest-prime-factor table to cover ``limit``.

    Only speeds up factorization; results are identical either way.
    """
    global _SPF
    if limit >= len(_SPF):
        _SPF = smallest_prime_factors(limit)


def _factor(n: int) -> Factorization:
    return factorize(n, _SPF)


@lru_cache(maxsize=512)
def _class_values(n: int, cap: int) -> tuple[tuple[AbelianGroup, Fraction], ...]:
    return tuple((g, m_group(g)) for g in enumerate_abelian_groups(n, cap))


def group_values(n: int, cap: int = DEFAULT_CLASS_CAP,
                 oracle_cap: int | None = None) -> tuple[tuple[AbelianGroup, Fraction], ...]:
    """``(G, m(G))`` for every abelian class of order ``n``, cyclic first.

    With ``oracle_cap`` set, each group of order at most ``oracle_cap`` is
    re-evaluated by brute force and a disagreement raises ``AssertionError``.
    """
    values = _class_values(n, cap)
    if oracle_cap is not None and n <= oracle_cap:
        for g, m in values:
            brute = m_bruteforce(g, oracle_cap)
            if brute != m:
                raise AssertionError(f"m({g.signature}) = {m} but brute force gives {brute}")
    return values


def _argmin(items: Iterable[tuple[AbelianGroup, Fraction]]) -> tuple[AbelianGroup, Fraction]:
    # first minimum in enumeration order
    best = None
    for g, v in items:
        if best is None or v < best[1]:
            best = (g, v)
    return best


def _argmax(items: Iterable[tuple[AbelianGroup, Fraction]]) -> tuple[AbelianGroup, Fraction]:
    best = None
    for g, v in items:
        if best is None or v > best[1]:
            best = (g, v)
    return best


@dataclass(frozen=True)
class GroupVerdict:
    """Per-group outcome of the two-sided ratio bound for one non-cyclic ``G``."""

    group: AbelianGroup
    m: Fraction
    ratio: Fraction  # m(Z_n) / m(G)
    lower: Fraction  # 1/(p-1)
    upper: Fraction  # (2+t)/(3+t)

    @property
    def lower_ok(self) -> bool:
        return self.lower < self.ratio

    @property
    def upper_ok(self) -> bool:
        return self.ratio <= self.upper


def group_verdicts(n: int, cap: int = DEFAULT_CLASS_CAP) -> list[GroupVerdict]:
    """Ratio bounds for each non-cyclic abelian group of order ``n``.

    For odd ``n`` the lower bound is exactly the odd-order inequality
    ``m(Z_n) > m(G)/(p-1)`` evaluated for that ``G``.
    """
    if n < 2:
        raise DomainError(f"n={n}: need n >= 2")
    f = _factor(n)
    t, _ = two_adic_split(n)
    p = f.largest_prime
    lower = Fraction(1, p - 1)
    upper = Fraction(2 + t, 3 + t)
    values = group_values(n, cap)
    mc = values[0][1]
    return [GroupVerdict(g, m, mc / m, lower, upper) for g, m in values[1:]]


# -- checks ------------------------------------------------------------------

def check_initial(n: int, cap: int = DEFAULT_CLASS_CAP, oracle_cap: int | None = None) -> BoundReport:
    """The cyclic group is the unique minimizer of ``m`` among abelian groups
    of order ``n``: lhs ``m(Z_n)``, rhs the least ``m`` of a non-cyclic group."""
    if n < 1:
        raise DomainError(f"n={n}: need n >= 1")
    values = group_values(n, cap, oracle_cap)
    cyclic, mc = values[0]
    if len(values) == 1:
        return _special(n, CheckId.INITIAL, Verdict.VACUOUS, "only the cyclic class exists",
                        lhs=mc, witness=cyclic.signature)
    g_min, m_min = _argmin(values[1:])
    witness = cyclic if mc <= m_min else g_min
    return _judged(n, CheckId.INITIAL, mc, m_min, witness.signature)


def check_main(n: int, cap: int = DEFAULT_CLASS_CAP, oracle_cap: int | None = None) -> BoundReport:
    """``m(G) >= (3+t)/(2+t) m(Z_n)`` for all non-cyclic ``G``: lhs is the
    least ratio ``m(G)/m(Z_n)``, rhs the bound."""
    if n < 2:
        raise DomainError(f"n={n}: need n >= 2")
    t, _ = two_adic_split(n)
    bound = Fraction(3 + t, 2 + t)
    values = group_values(n, cap, oracle_cap)
    mc = values[0][1]
    if len(values) == 1:
        return _special(n, CheckId.MAIN, Verdict.VACUOUS, "no non-cyclic abelian group", rhs=bound)
    g_min, m_min = _argmin(values[1:])
    return _judged(n, CheckId.MAIN, m_min / mc, bound, g_min.signature)


def extremal(n: int, cap: int = DEFAULT_CLASS_CAP) -> tuple[str, Fraction]:
    """The non-cyclic abelian group of order ``n`` with least ``m``, and that
    ``m``; ties go to the earlier group in enumeration order."""
    values = group_values(n, cap)
    if len(values) == 1:
        raise NoNonCyclicGroupError(f"every abelian group of order {n} is cyclic")
    g, m = _argmin(values[1:])
    return g.signature, m


def sharpness_group(n: int) -> AbelianGroup:
    """``Z_{2l} x Z_{2^(t-1)}`` for ``n = 2^t l``; needs ``t >= 2``."""
    t, l = two_adic_split(n)
    if t < 2:
        raise DomainError(f"n={n} has t={t}; the designated group needs t >= 2")
    return from_cyclic_factors([2 * l, 2 ** (t - 1)])


def cyclic_identity(n: int) -> tuple[Fraction, Fraction]:
    """``(m(Z_n), (2+t)/2 m(Z_l))``; the two always agree."""
    f = _factor(n)
    t = f.exponent(2)
    odd = Factorization(n >> t, f.factors[1:] if t else f.factors)
    return m_cyclic(f), Fraction(2 + t, 2) * m_cyclic(odd)


def check_sharpness(n: int) -> BoundReport:
    """Whether ``m(Z_{2l} x Z_{2^(t-1)}) = (3+t)/2 m(Z_l)``."""
    if n < 1:
        raise DomainError(f"n={n}: need n >= 1")
    t, l = two_adic_split(n)
    left, right = cyclic_identity(n)
    if left != right:
        raise AssertionError(f"m(Z_{n}) = {left} but (2+t)/2 m(Z_l) = {right}")
    if t < 2:
        return _special(n, CheckId.SHARPNESS, Verdict.NOT_APPLICABLE,
                        f"t={t}: Z_2l x Z_2^(t-1) is cyclic or undefined")
    g = sharpness_group(n)
    return _judged(n, CheckId.SHARPNESS, m_group(g), Fraction(3 + t, 2) * m_cyclic(_factor(l)),
                   g.signature)


def check_sqrt(n: int) -> BoundReport:
    """``m(Z_n) < (2+t)/(3+t) sqrt(n)`` as ``a^2 (3+t)^2 < b^2 (2+t)^2 n``
    with ``m(Z_n) = a/b``."""
    if n < 1:
        raise DomainError(f"n={n}: need n >= 1")
    t, _ = two_adic_split(n)
    m = m_cyclic(_factor(n))
    a, b = m.numerator, m.denominator
    return _judged(n, CheckId.SQRT, Fraction(a * a * (3 + t) ** 2), Fraction(b * b * (2 + t) ** 2 * n))


def check_phi_bounds(n: int) -> list[BoundReport]:
    """The four totient-based lower bounds for ``m(Z_n)``, in check-id order."""
    if n < 2:
        raise DomainError(f"n={n}: the totient bounds need a prime divisor")
    f = _factor(n)
    q, p = f.smallest_prime, f.largest_prime
    split = two_adic_split(n)
    m = m_cyclic(f)
    phi_ratio = Fraction(euler_phi(f), n)
    floor = Fraction(q - 1, p)
    return [
        _judged(n, CheckId.PHI_RATIO, m, phi_ratio, split=split),
        _judged(n, CheckId.PHI_FLOOR, phi_ratio, floor, split=split),
        _judged(n, CheckId.M_FLOOR, m, floor, split=split),
        _judged(n, CheckId.INV_P_FLOOR, m, Fraction(1, p), split=split),
    ]


def check_odd_lower(n: int, cap: int = DEFAULT_CLASS_CAP) -> BoundReport:
    """``m(Z_n) > m(G)/(p-1)`` for every non-cyclic ``G`` of odd order ``n``.

    Stored as lhs ``m(Z_n)`` against the largest ``m(G)/(p-1)``, which holds
    exactly when every per-group inequality does (see :func:`group_verdicts`).
    """
    if n < 3 or n % 2 == 0:
        raise DomainError(f"n={n}: the odd-order bound needs odd n >= 3")
    p = _factor(n).largest_prime
    values = group_values(n, cap)
    mc = values[0][1]
    if len(values) == 1:
        return _special(n, CheckId.ODD_LOWER, Verdict.VACUOUS, "no non-cyclic abelian group", lhs=mc)
    g_max, m_max = _argmax(values[1:])
    failing = [g.signature for g, m in values[1:] if not mc > m / (p - 1)]
    note = f"failing groups: {' '.join(failing)}" if failing else ""
    return _judged(n, CheckId.ODD_LOWER, mc, m_max / (p - 1), g_max.signature, note)


def check_corollary(n: int, cap: int = DEFAULT_CLASS_CAP) -> BoundReport:
    """``1/(p-1) < m(Z_n)/m(G) <= (2+t)/(3+t)`` for all non-cyclic ``G``.

    lhs is ``(least ratio, greatest ratio)``, rhs ``(1/(p-1), (2+t)/(3+t))``;
    the witness names the groups attaining the least and greatest ratio.
    """
    if n < 2:
        raise DomainError(f"n={n}: need n >= 2")
    f = _factor(n)
    t, _ = two_adic_split(n)
    bounds = (Fraction(1, f.largest_prime - 1), Fraction(2 + t, 3 + t))
    verdicts = group_verdicts(n, cap)
    if not verdicts:
        return _special(n, CheckId.COROLLARY, Verdict.VACUOUS, "no non-cyclic abelian group", rhs=bounds)
    lo = _argmin((v.group, v.ratio) for v in verdicts)
    hi = _argmax((v.group, v.ratio) for v in verdicts)
    notes = []
    if bad := [v.group.signature for v in verdicts if not v.lower_ok]:
        notes.append(f"lower bound fails for: {' '.join(bad)}")
    if bad := [v.group.signature for v in verdicts if not v.upper_ok]:
        notes.append(f"upper bound fails for: {' '.join(bad)}")
    return _judged(n, CheckId.COROLLARY, (lo[1], hi[1]), bounds,
                   lo[0].signature + WITNESS_SEPARATOR + hi[0].signature, "; ".join(notes))


# -- sweeps ------------------------------------------------------------------

MIN_N = {
    CheckId.INITIAL: 1,
    CheckId.MAIN: 2,
    CheckId.SHARPNESS: 1,
    CheckId.SQRT: 1,
    CheckId.PHI_RATIO: 2,
    CheckId.PHI_FLOOR: 2,
    CheckId.M_FLOOR: 2,
    CheckId.INV_P_FLOOR: 2,
    CheckId.ODD_LOWER: 1,
    CheckId.COROLLARY: 2,
}


@dataclass(frozen=True)
class SweepConfig:
    cap: int = DEFAULT_CLASS_CAP
    oracle_cap: int | None = None


def run_checks(n: int, checks: Iterable[CheckId], config: SweepConfig = SweepConfig()) -> list[BoundReport]:
    """All requested checks at one ``n``.  Precondition failures become
    ``NOT_APPLICABLE`` reports and cap overruns ``ERROR`` reports."""
    return _run_sorted(n, sorted(set(checks), key=lambda c: c.rank), config)


def _run_sorted(n: int, wanted: list[CheckId], config: SweepConfig) -> list[BoundReport]:
    out: list[BoundReport] = []
    phi_done = False
    for check in wanted:
        try:
            if check in PHI_CHECKS:
                if not phi_done:
                    phi_done = True
                    out.extend(r for r in check_phi_bounds(n) if r.check_id in wanted)
                continue
            out.append(_dispatch(check, n, config))
        except CapExceededError as exc:
            out.extend(_special(n, c, Verdict.ERROR, str(exc)) for c in _group_of(check, wanted))
        except DomainError as exc:
            out.extend(_special(n, c, Verdict.NOT_APPLICABLE, str(exc)) for c in _group_of(check, wanted))
    return out


def _group_of(check: CheckId, wanted: list[CheckId]) -> list[CheckId]:
    if check in PHI_CHECKS:
        return [c for c in wanted if c in PHI_CHECKS]
    return [check]


def _dispatch(check: CheckId, n: int, config: SweepConfig) -> BoundReport:
    if check is CheckId.INITIAL:
        return check_initial(n, config.cap, config.oracle_cap)
    if check is CheckId.MAIN:
        return check_main(n, config.cap, config.oracle_cap)
    if check is CheckId.SHARPNESS:
        return check_sharpness(n)
    if check is CheckId.SQRT:
        return check_sqrt(n)
    if check is CheckId.ODD_LOWER:
        return check_odd_lower(n, config.cap)
    if check is CheckId.COROLLARY:
        return check_corollary(n, config.cap)
    raise ValueError(f"unknown check {check!r}")


def _sweep_chunk(args: tuple[int, int, tuple[CheckId, ...], SweepConfig]) -> list[BoundReport]:
    lo, hi, checks, config = args
    ensure_sieve(hi)
    wanted = list(checks)
    out = []
    for n in range(lo, hi + 1):
        out.extend(_run_sorted(n, wanted, config))
    return out


def sweep(lo: int, hi: int, checks: Iterable[CheckId], config: SweepConfig = SweepConfig(),
          workers: int = 1) -> list[BoundReport]:
    """Run ``checks`` for every ``lo <= n <= hi``; reports sorted by
    ``(n, check id)`` whatever the worker count."""
    if lo > hi:
        raise DomainError(f"empty range {lo}..{hi}")
    if lo < 1:
        raise DomainError(f"range start {lo} must be >= 1")
    checks = tuple(sorted(set(checks), key=lambda c: c.rank))
    if not checks:
        return []
    if workers <= 1:
        reports = _sweep_chunk((lo, hi, checks, config))
    else:
        step = max(1, (hi - lo + 1) // (workers * 8))
        chunks = [(a, min(a + step - 1, hi), checks, config) for a in range(lo, hi + 1, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = [r for part in pool.map(_sweep_chunk, chunks) for r in part]
    reports.sort(key=lambda r: r.sort_key)
    return reports


@dataclass
class SweepSummary:
    counts: dict[CheckId, Counter] = field(default_factory=dict)

    def add(self, report: BoundReport) -> None:
        self.counts.setdefault(report.check_id, Counter())[report.verdict] += 1

    def lines(self) -> list[str]:
        out = []
        for check in sorted(self.counts, key=lambda c: c.rank):
            c = self.counts[check]
            out.append(
                f"{check.value}: holds={c[Verdict.HOLDS]} fails={c[Verdict.FAILS]} "
                f"vacuous={c[Verdict.VACUOUS]} n/a={c[Verdict.NOT_APPLICABLE]} error={c[Verdict.ERROR]}"
            )
        return out


def summarize(reports: Iterable[BoundReport]) -> SweepSummary:
    summary = SweepSummary()
    for r in reports:
        summary.add(r)
    return summary
