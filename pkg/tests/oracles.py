"""Deliberately naive reference implementations used only by the tests.

Nothing here imports from ``ordersums``.
"""

from fractions import Fraction
from itertools import product
from math import gcd


def naive_factor(n):
    out = {}
    d = 2
    while n > 1:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    return sorted(out.items())


def phi_by_counting(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def partition_numbers(limit):
    """p(0..limit) via Euler's pentagonal number recurrence."""
    p = [1] + [0] * limit
    for k in range(1, limit + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p


def element_orders(moduli):
    """Order of every element of Z_{m_1} x ... x Z_{m_k}, by repeated addition."""
    orders = []
    for x in product(*(range(m) for m in moduli)):
        k, y = 1, x
        while any(y):
            y = tuple((a + b) % m for a, b, m in zip(y, x, moduli))
            k += 1
        orders.append(k)
    return orders


def m_by_addition(moduli):
    return sum((Fraction(1, k) for k in element_orders(moduli)), Fraction(0))


def distribution_by_addition(moduli):
    out = {}
    for k in element_orders(moduli):
        out[k] = out.get(k, 0) + 1
    return out
