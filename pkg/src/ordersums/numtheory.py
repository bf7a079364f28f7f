"""Integer primitives: factorization, Euler's totient, 2-adic splitting and
integer partitions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod
from typing import NamedTuple

from .errors import DomainError

Partition = tuple[int, ...]


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer, primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"factorization of non-positive integer {self.n}")
        last = 1
        for p, r in self.factors:
            if p <= last or r < 1:
                raise DomainError(f"malformed factorization {self.factors!r}")
            last = p
        if prod(p**r for p, r in self.factors) != self.n:
            raise DomainError(f"factors {self.factors!r} do not multiply to {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def smallest_prime(self) -> int:
        if not self.factors:
            raise DomainError("1 has no prime divisor")
        return self.factors[0][0]

    @property
    def largest_prime(self) -> int:
        if not self.factors:
            raise DomainError("1 has no prime divisor")
        return self.factors[-1][0]

    def exponent(self, p: int) -> int:
        for q, r in self.factors:
            if q == p:
                return r
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


class TwoAdicSplit(NamedTuple):
    t: int
    l: int  # noqa: E741


def factorize(n: int, spf: list[int] | None = None) -> Factorization:
    """Factor ``n`` by trial division.

    ``spf`` is an optional smallest-prime-factor table (see
    :func:`smallest_prime_factors`); when given and large enough it replaces
    trial division, which is what the bulk sweeps do.

    >>> factorize(12).factors
    ((2, 2), (3, 1))
    """
    if n < 1:
        raise DomainError(f"cannot factor {n}: need n >= 1")
    if spf is not None and n < len(spf):
        return _factorize_spf(n, spf)
    factors = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            r = 0
            while m % p == 0:
                m //= p
                r += 1
            factors.append((p, r))
    # 6k +- 1 wheel
    d, step = 5, 2
    while d * d <= m:
        if m % d == 0:
            r = 0
            while m % d == 0:
                m //= d
                r += 1
            factors.append((d, r))
        d += step
        step = 6 - step
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def _factorize_spf(n: int, spf: list[int]) -> Factorization:
    factors = []
    m = n
    while m > 1:
        p = spf[m]
        r = 0
        while m % p == 0:
            m //= p
            r += 1
        factors.append((p, r))
    return Factorization(n, tuple(factors))


def smallest_prime_factors(limit: int) -> list[int]:
    """Sieve table ``spf`` with ``spf[k]`` the least prime dividing ``k``
    for ``2 <= k <= limit`` (entries 0 and 1 are 0 and 1)."""
    spf = list(range(limit + 1))
    for i in range(2, isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    if limit >= 0:
        spf[0] = 0
    return spf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n).factors == ((n, 1),)


def euler_phi(f: Factorization) -> int:
    """Euler's totient from a factorization; ``phi(1) == 1``."""
    return prod((p - 1) * p ** (r - 1) for p, r in f.factors)


def two_adic_split(n: int) -> TwoAdicSplit:
    """Write ``n = 2**t * l`` with ``l`` odd."""
    if n < 1:
        raise DomainError(f"2-adic split of {n}: need n >= 1")
    t = (n & -n).bit_length() - 1
    return TwoAdicSplit(t, n >> t)


@lru_cache(maxsize=None)
def partitions(k: int) -> tuple[Partition, ...]:
    """All partitions of ``k`` as non-increasing tuples, reverse-lexicographic.

    >>> partitions(4)
    ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    """
    if k < 0:
        raise DomainError(f"partitions of negative integer {k}")
    return tuple(_partitions_bounded(k, k))


def _partitions_bounded(k: int, largest: int):
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions_bounded(k - first, first):
            yield (first,) + rest
