"""Finite abelian groups up to isomorphism, stored in primary decomposition.

A group is a tuple of ``(p, partition)`` pairs, primes ascending, where the
partition ``(a_1 >= a_2 >= ...)`` stands for the Sylow subgroup
``Z_{p^a_1} x Z_{p^a_2} x ...``.  Two values compare equal exactly when the
groups are isomorphic.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from math import prod

from .errors import CapExceededError, DomainError
from .numtheory import Partition, factorize, partitions

DEFAULT_CLASS_CAP = 10**6

_SIGNATURE_ITEM = re.compile(r"^(\d+):\[(\d+(?:,\d+)*)\]$")


@dataclass(frozen=True, order=True)
class AbelianGroup:
    components: tuple[tuple[int, Partition], ...] = ()

    def __post_init__(self) -> None:
        last = 1
        for p, lam in self.components:
            if p <= last:
                raise DomainError(f"primes must be strictly increasing: {self.components!r}")
            if not lam or any(a < 1 for a in lam) or list(lam) != sorted(lam, reverse=True):
                raise DomainError(f"bad partition {lam!r} at prime {p}")
            last = p

    @property
    def order(self) -> int:
        return group_order(self)

    @property
    def signature(self) -> str:
        return signature(self)

    def sylow(self, p: int) -> Partition:
        for q, lam in self.components:
            if q == p:
                return lam
        return ()

    def primary_factors(self) -> list[int]:
        """Orders of the prime-power cyclic factors, e.g. ``[4, 2, 3]``."""
        return [p**a for p, lam in self.components for a in lam]

    def __str__(self) -> str:
        return invariant_factor_form(self)


TRIVIAL = AbelianGroup()


def cyclic_group(n: int) -> AbelianGroup:
    f = factorize(n)
    return AbelianGroup(tuple((p, (r,)) for p, r in f.factors))


def from_cyclic_factors(orders: list[int] | tuple[int, ...]) -> AbelianGroup:
    """Canonical form of ``Z_{m_1} x Z_{m_2} x ...``; the CRT splits each
    factor into its prime-power parts."""
    parts: dict[int, list[int]] = defaultdict(list)
    for m in orders:
        if m < 2:
            raise DomainError(f"cyclic factor order must be >= 2, got {m}")
        for p, r in factorize(m).factors:
            parts[p].append(r)
    return _from_parts(parts)


def _from_parts(parts: dict[int, list[int]]) -> AbelianGroup:
    return AbelianGroup(
        tuple((p, tuple(sorted(parts[p], reverse=True))) for p in sorted(parts) if parts[p])
    )


def direct_product(g: AbelianGroup, h: AbelianGroup) -> AbelianGroup:
    parts: dict[int, list[int]] = defaultdict(list)
    for p, lam in g.components + h.components:
        parts[p].extend(lam)
    return _from_parts(parts)


def group_order(g: AbelianGroup) -> int:
    return prod(p ** sum(lam) for p, lam in g.components)


def is_cyclic(g: AbelianGroup) -> bool:
    return all(len(lam) == 1 for _, lam in g.components)


def class_count(n: int) -> int:
    """Number of abelian groups of order ``n`` up to isomorphism."""
    return prod(len(partitions(r)) for _, r in factorize(n).factors)


def enumerate_abelian_groups(n: int, cap: int = DEFAULT_CLASS_CAP) -> list[AbelianGroup]:
    """One representative per isomorphism class of abelian groups of order
    ``n``; the cyclic group comes first."""
    f = factorize(n)
    count = prod(len(partitions(r)) for _, r in f.factors)
    if count > cap:
        raise CapExceededError(
            f"n={n} has {count} abelian isomorphism classes, above the cap {cap}", n=n, cap=cap
        )
    primes = f.primes
    per_prime = [partitions(r) for _, r in f.factors]
    return [AbelianGroup(tuple(zip(primes, choice))) for choice in product(*per_prime)]


def invariant_factors(g: AbelianGroup) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_k``, ascending."""
    width = max((len(lam) for _, lam in g.components), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, lam in g.components:
            if i < len(lam):
                d *= p ** lam[i]
        factors.append(d)
    return factors[::-1]


def invariant_factor_form(g: AbelianGroup) -> str:
    """Display form, largest factor first: ``Z12 x Z2``; the trivial group is ``Z1``."""
    factors = invariant_factors(g)
    if not factors:
        return "Z1"
    return " x ".join(f"Z{d}" for d in reversed(factors))


def signature(g: AbelianGroup) -> str:
    """Canonical text key, e.g. ``2:[2,1];3:[1]``; the trivial group is ``1``."""
    if not g.components:
        return "1"
    return ";".join(f"{p}:[{','.join(map(str, lam))}]" for p, lam in g.components)


def parse_signature(text: str) -> AbelianGroup:
    text = text.strip()
    if text == "1":
        return TRIVIAL
    comps = []
    for item in text.split(";"):
        m = _SIGNATURE_ITEM.match(item.strip())
        if m is None:
            raise DomainError(f"malformed group signature item {item!r}")
        p = int(m.group(1))
        if factorize(p).factors != ((p, 1),):
            raise DomainError(f"{p} is not prime in signature {text!r}")
        comps.append((p, tuple(int(a) for a in m.group(2).split(","))))
    return AbelianGroup(tuple(comps))
