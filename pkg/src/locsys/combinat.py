"""Partitions, the Moebius function, generalized binomials, and brute-force
verification of the partition / binomial generating-function identities that
the counting engine relies on."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def mobius(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise ValueError("need n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def squarefree_divisors(n: int):
    primes = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    out = [1]
    for p in primes:
        out += [d * p for d in out]
    return sorted(out)


class Partition:
    """Unordered partition stored as a multiplicity map part -> count."""

    __slots__ = ("mult", "n")

    def __init__(self, mult):
        self.mult = {j: a for j, a in sorted(mult.items()) if a}
        if any(j < 1 or a < 1 for j, a in self.mult.items()):
            raise ValueError("parts and multiplicities must be positive")
        self.n = sum(j * a for j, a in self.mult.items())

    def parts(self):
        out = []
        for j, a in self.mult.items():
            out += [j] * a
        return out

    def num_parts(self):
        return sum(self.mult.values())

    def s_weight(self, j: int) -> int:
        """sum over parts nu of mult(nu) * min(nu, j)."""
        return sum(a * min(nu, j) for nu, a in self.mult.items())

    def __eq__(self, other):
        return isinstance(other, Partition) and self.mult == other.mult

    def __hash__(self):
        return hash(tuple(self.mult.items()))

    def __repr__(self):
        inner = " ".join(f"{j}^{a}" for j, a in self.mult.items())
        return f"Partition({inner})"


def partitions(n: int):
    """All unordered partitions of n, largest part decreasing first."""
    if n < 1:
        raise ValueError("need n >= 1")

    def rec(remaining, cap):
        if remaining == 0:
            yield []
            return
        for part in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - part, part):
                yield [part] + rest

    for parts in rec(n, n):
        mult = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        yield Partition(mult)


def partitions_restricted(m: int, xi: int):
    """Partitions of m whose parts are all divisible by xi."""
    if xi < 1:
        raise ValueError("need xi >= 1")
    if m % xi:
        return
    for lam in partitions(m // xi):
        yield Partition({j * xi: a for j, a in lam.mult.items()})


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Classical pentagonal-number recurrence; independent oracle for the
    partition generator."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def binom_ring(x, k: int):
    """Falling-factorial binomial x(x-1)...(x-k+1)/k! in any commutative
    ring containing the rationals; binom(x, 0) = 1."""
    if k < 0:
        raise ValueError("need k >= 0")
    if k == 0:
        return Fraction(1) if isinstance(x, (int, Fraction)) else x * 0 + 1
    num = x
    shifted = x
    for i in range(1, k):
        shifted = shifted - 1
        num = num * shifted
    return num * Fraction(1, math.factorial(k))


def multinomial(counts) -> int:
    total = sum(counts)
    out = math.factorial(total)
    for c in counts:
        out //= math.factorial(c)
    return out


def cycle_sum_identity_check(m: int, xi: int, s) -> bool:
    """Brute-force the cycle-count sum against its closed binomial form:

    m! * sum over partitions of m with xi | parts of
        S^(#parts - 1) / (prod c_j! * prod j^c_j)
      == (m-1)! * binom(S/xi + m/xi - 1, m/xi - 1).
    """
    if m % xi:
        raise ValueError("xi must divide m")
    s = Fraction(s)
    lhs = Fraction(0)
    for lam in partitions_restricted(m, xi):
        denom = 1
        for j, c in lam.mult.items():
            denom *= math.factorial(c) * j ** c
        lhs += s ** (lam.num_parts() - 1) / denom
    lhs *= math.factorial(m)
    rhs = math.factorial(m - 1) * binom_ring(s / xi + m // xi - 1, m // xi - 1)
    return lhs == rhs


def binomial_convolution_check(k: int, xi: int, d, s) -> bool:
    """Brute-force the multinomial binomial convolution against binom(D*S, k/xi):

    sum over partitions (i^{b_i}) of k with xi | parts of
        binom(D, sum b_i) * multinomial(b) * prod binom(S, i/xi)^{b_i}
      == binom(D*S, k/xi).
    """
    if k % xi:
        raise ValueError("xi must divide k")
    d = Fraction(d)
    s = Fraction(s)
    lhs = Fraction(0)
    for lam in partitions_restricted(k, xi):
        bs = list(lam.mult.values())
        term = binom_ring(d, lam.num_parts()) * multinomial(bs)
        for i, b in lam.mult.items():
            term *= binom_ring(s, i // xi) ** b
        lhs += term
    return lhs == binom_ring(d * s, k // xi)


def mobius_divisor_lemma_check(t: int, l: int, big_l: int) -> bool:
    """sum of mu(m) over m with m*l/(l, m*t) | L equals [L == 1 and l | t].

    Only squarefree m whose primes divide t*l*L can meet the condition, so
    the enumeration over squarefree divisors of t*l*L is exhaustive.
    """
    if min(t, l, big_l) < 1:
        raise ValueError("need positive arguments")
    total = 0
    for m in squarefree_divisors(t * l * big_l):
        if big_l % (m * l // math.gcd(l, m * t)) == 0:
            total += mobius(m)
    expected = 1 if (big_l == 1 and t % l == 0) else 0
    return total == expected
