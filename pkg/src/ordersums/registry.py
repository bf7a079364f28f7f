"""Expected-failure registry.

Several of the inequalities fail at specific small ``n`` under exact
computation.  The registry lists those ``n`` per check over a covered range
so that a sweep can tell a known exception from a regression.  A ``FAILS``
report is *expected* only if its ``n`` lies inside the covered range of its
check and is listed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .bounds import BoundReport, CheckId, SweepConfig, Verdict, sweep

REGISTRY_RESOURCE = "expected_failures.json"

# covered range upper ends used when regenerating the shipped file
DEFAULT_COVERAGE = {
    CheckId.INITIAL: 10**4,
    CheckId.MAIN: 10**4,
    CheckId.SHARPNESS: 10**4,
    CheckId.SQRT: 10**5,
    CheckId.PHI_RATIO: 10**6,
    CheckId.PHI_FLOOR: 10**6,
    CheckId.M_FLOOR: 10**6,
    CheckId.INV_P_FLOOR: 10**6,
    CheckId.ODD_LOWER: 10**4,
    CheckId.COROLLARY: 10**4,
}


@dataclass
class Registry:
    ranges: dict[CheckId, tuple[int, int]] = field(default_factory=dict)
    failures: dict[CheckId, frozenset[int]] = field(default_factory=dict)

    def covers(self, check: CheckId, n: int) -> bool:
        lo, hi = self.ranges.get(check, (1, 0))
        return lo <= n <= hi

    def is_expected(self, report: BoundReport) -> bool:
        return self.covers(report.check_id, report.n) and report.n in self.failures.get(report.check_id, ())

    def to_dict(self) -> dict:
        return {
            "checks": {
                c.value: {"range": list(self.ranges[c]), "failures": sorted(self.failures.get(c, ()))}
                for c in sorted(self.ranges, key=lambda c: c.rank)
            }
        }

    @classmethod
    def from_dict(cls, data: dict) -> Registry:
        reg = cls()
        for name, entry in data["checks"].items():
            check = CheckId(name)
            lo, hi = entry["range"]
            reg.ranges[check] = (int(lo), int(hi))
            reg.failures[check] = frozenset(int(n) for n in entry["failures"])
        return reg


def load_registry(path: str | Path | None = None) -> Registry:
    if path is None:
        text = resources.files("ordersums").joinpath("data", REGISTRY_RESOURCE).read_text()
    else:
        text = Path(path).read_text()
    return Registry.from_dict(json.loads(text))


def build_registry(coverage: dict[CheckId, int] | None = None,
                   config: SweepConfig = SweepConfig()) -> Registry:
    """Recompute the failure sets by sweeping each check over ``1..limit``."""
    coverage = coverage or DEFAULT_COVERAGE
    reg = Registry()
    for check, hi in sorted(coverage.items(), key=lambda kv: kv[0].rank):
        reports = sweep(1, hi, [check], config)
        reg.ranges[check] = (1, hi)
        reg.failures[check] = frozenset(r.n for r in reports if r.verdict is Verdict.FAILS)
    return reg


def unexpected_failures(reports: list[BoundReport], registry: Registry) -> list[BoundReport]:
    return [r for r in reports if r.verdict is Verdict.FAILS and not registry.is_expected(r)]
