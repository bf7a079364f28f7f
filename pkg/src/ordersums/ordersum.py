"""Exact element-order statistics of finite abelian groups.

``m(G)`` is the sum of ``1/o(a)`` over the elements of ``G`` and ``psi(G)`` the
sum of ``o(a)``.  Two independent routes compute ``m``: a product over Sylow
subgroups (the production path) and a sum over the full order distribution.
:func:`m_bruteforce` walks every element and serves as the oracle for both.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Mapping
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd, lcm

from .abelian import AbelianGroup, group_order
from .errors import CapExceededError
from .numtheory import Factorization, Partition

DEFAULT_ORACLE_CAP = 10**5


class OrderDistribution(Mapping[int, int]):
    """Immutable map from element order to the number of elements of that order."""

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[int, int]):
        self._counts = dict(sorted((d, c) for d, c in counts.items() if c))

    def __getitem__(self, d: int) -> int:
        return self._counts[d]

    def __iter__(self) -> Iterator[int]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return self._counts == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._counts.items()))

    def __repr__(self) -> str:
        return f"OrderDistribution({self._counts!r})"

    def __str__(self) -> str:
        return "{" + ",".join(f"{d}:{c}" for d, c in self._counts.items()) + "}"

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    @property
    def exponent(self) -> int:
        return max(self._counts)

    def harmonic_sum(self) -> Fraction:
        return sum((Fraction(c, d) for d, c in self._counts.items()), Fraction(0))

    def order_sum(self) -> int:
        return sum(d * c for d, c in self._counts.items())


def m_cyclic(f: Factorization) -> Fraction:
    """``m(Z_n) = prod (1 + r (p-1)/p)`` over the prime powers ``p^r || n``."""
    num = den = 1
    for p, r in f.factors:
        num *= p + r * (p - 1)
        den *= p
    return Fraction(num, den)


@lru_cache(maxsize=65536)
def _p_group_counts(p: int, lam: Partition) -> tuple[tuple[int, int], ...]:
    # #{x : p^j x = 0} in prod Z_{p^a_i} is p^(sum_i min(a_i, j))
    counts = [(1, 1)]
    below = 1
    for j in range(1, lam[0] + 1):
        upto = p ** sum(min(a, j) for a in lam)
        counts.append((p**j, upto - below))
        below = upto
    return tuple(counts)


@lru_cache(maxsize=65536)
def m_p_group(p: int, lam: Partition) -> Fraction:
    """``m`` of the abelian p-group with partition ``lam``."""
    top = p ** lam[0]
    return Fraction(sum(c * (top // d) for d, c in _p_group_counts(p, lam)), top)


def order_distribution(g: AbelianGroup) -> OrderDistribution:
    """Closed-form order distribution: per-prime counts, convolved across
    primes (orders of coprime parts multiply)."""
    dist = {1: 1}
    for p, lam in g.components:
        nxt: dict[int, int] = {}
        for d1, c1 in dist.items():
            for d2, c2 in _p_group_counts(p, lam):
                nxt[d1 * d2] = nxt.get(d1 * d2, 0) + c1 * c2
        dist = nxt
    return OrderDistribution(dist)


def m_group(g: AbelianGroup, cross_check: bool = False) -> Fraction:
    """``m(G)`` as the product of ``m`` over the Sylow subgroups.

    With ``cross_check`` the distribution route is evaluated as well and the
    two must agree.
    """
    value = Fraction(1)
    for p, lam in g.components:
        value *= m_p_group(p, lam)
    if cross_check:
        other = order_distribution(g).harmonic_sum()
        if other != value:
            raise AssertionError(f"m({g.signature}): Sylow product {value} != distribution sum {other}")
    return value


def m_from_distribution(g: AbelianGroup) -> Fraction:
    return order_distribution(g).harmonic_sum()


def psi_group(g: AbelianGroup) -> int:
    return order_distribution(g).order_sum()


def bruteforce_distribution(g: AbelianGroup, cap: int = DEFAULT_ORACLE_CAP) -> OrderDistribution:
    """Order distribution by visiting every element of ``prod Z_m`` over the
    primary cyclic factors; an element's order is the lcm of its coordinates'
    orders ``m / gcd(v, m)``."""
    n = group_order(g)
    if n > cap:
        raise CapExceededError(f"brute force over {n} elements exceeds the cap {cap}", n=n, cap=cap)
    coords = [[m // gcd(v, m) for v in range(m)] for m in g.primary_factors()]
    counts = Counter(reduce(lcm, orders, 1) for orders in product(*coords))
    return OrderDistribution(counts)


def m_bruteforce(g: AbelianGroup, cap: int = DEFAULT_ORACLE_CAP) -> Fraction:
    counts = bruteforce_distribution(g, cap)
    return sum((Fraction(c, d) for d, c in counts.items()), Fraction(0))
