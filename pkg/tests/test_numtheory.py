import pytest
from hypothesis import given
from hypothesis import strategies as st
from math import gcd, prod

from oracles import naive_factor, partition_numbers, phi_by_counting
from ordersums.errors import DomainError
from ordersums.numtheory import (
    Factorization,
    euler_phi,
    factorize,
    is_prime,
    partitions,
    smallest_prime_factors,
    two_adic_split,
)


@pytest.mark.parametrize(
    "n, expected",
    [(1, ()), (12, ((2, 2), (3, 1))), (9999, ((3, 2), (11, 1), (101, 1)))],
)
def test_factorize_examples(n, expected):
    assert factorize(n).factors == expected


def test_9999_matches_naive_factorizer():
    assert list(factorize(9999).factors) == naive_factor(9999)


@pytest.mark.parametrize("n", [0, -3])
def test_factorize_rejects_nonpositive(n):
    with pytest.raises(DomainError):
        factorize(n)


def test_factorization_reconstructs_up_to_1e5():
    spf = smallest_prime_factors(10**5)
    for n in range(1, 10**5 + 1):
        f = factorize(n, spf)
        assert prod(p**r for p, r in f.factors) == n
        assert all(is_prime(p) for p in f.primes[:2])


def test_trial_division_agrees_with_sieve():
    spf = smallest_prime_factors(20000)
    for n in range(1, 20001):
        assert factorize(n) == factorize(n, spf)


@given(st.integers(min_value=1, max_value=10**9))
def test_factorize_canonical(n):
    f = factorize(n)
    primes = f.primes
    assert list(primes) == sorted(set(primes))
    assert all(r >= 1 for _, r in f.factors)
    assert prod(p**r for p, r in f.factors) == n


def test_factorization_validates():
    with pytest.raises(DomainError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(DomainError):
        Factorization(12, ((2, 1), (3, 1)))


def test_smallest_and_largest_prime():
    f = factorize(360)
    assert (f.smallest_prime, f.largest_prime) == (2, 5)
    with pytest.raises(DomainError):
        factorize(1).largest_prime


@pytest.mark.parametrize("n, expected", [(1, 1), (12, 4), (100, 40)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(factorize(n)) == expected


def test_euler_phi_against_counting():
    for n in range(1, 400):
        assert euler_phi(factorize(n)) == phi_by_counting(n)


def test_euler_phi_multiplicative():
    phi = [0] + [euler_phi(factorize(n)) for n in range(1, 10**6 + 1)]
    for a in range(1, 1001):
        for b in range(a, 1001):
            if gcd(a, b) == 1:
                assert phi[a * b] == phi[a] * phi[b]


@pytest.mark.parametrize("n, expected", [(7, (0, 7)), (8, (3, 1)), (12, (2, 3)), (1, (0, 1))])
def test_two_adic_split_examples(n, expected):
    assert two_adic_split(n) == expected


@given(st.integers(min_value=1, max_value=2**80))
def test_two_adic_split_property(n):
    t, l = two_adic_split(n)
    assert l % 2 == 1 and 2**t * l == n


def test_partitions_examples():
    assert partitions(0) == ((),)
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert len(partitions(10)) == 42


def test_partition_counts_match_pentagonal_recurrence():
    p = partition_numbers(30)
    for k in range(31):
        assert len(partitions(k)) == p[k]


@pytest.mark.parametrize("k", [5, 9, 14])
def test_partitions_canonical_and_reverse_lex(k):
    parts = partitions(k)
    for lam in parts:
        assert sum(lam) == k
        assert list(lam) == sorted(lam, reverse=True)
        assert all(a >= 1 for a in lam)
    assert list(parts) == sorted(parts, reverse=True)
    assert len(set(parts)) == len(parts)
