"""Truncated formal power series over an exact commutative coefficient ring.

The ring is duck-typed: coefficients must support +, -, * among themselves
and * by int/Fraction.  Rationals, LaurentPoly and FreePoly all qualify.
exp and log use the standard derivative recurrences, which only ever divide
by integers, so everything stays exact.
"""

from __future__ import annotations

from fractions import Fraction


def _is_zero(c):
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


class TruncatedSeries:
    """Coefficients of z^0..z^cap; arithmetic silently truncates at cap."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap: int, coeffs):
        coeffs = list(coeffs)
        if cap < 0:
            raise ValueError("cap must be >= 0")
        if len(coeffs) != cap + 1:
            raise ValueError(f"need exactly {cap + 1} coefficients")
        self.cap = cap
        self.coeffs = coeffs

    @classmethod
    def from_terms(cls, cap, terms, zero):
        """terms: iterable of (exponent, coefficient); out-of-cap terms drop."""
        coeffs = [zero] * (cap + 1)
        for e, c in terms:
            if 0 <= e <= cap:
                coeffs[e] = coeffs[e] + c
        return cls(cap, coeffs)

    @classmethod
    def constant(cls, cap, value, zero):
        coeffs = [zero] * (cap + 1)
        coeffs[0] = value
        return cls(cap, coeffs)

    def _zero(self):
        return self.coeffs[0] * 0

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cap == other.cap and all(
            _is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            if other.cap != self.cap:
                raise ValueError("mixed truncation caps")
            return TruncatedSeries(self.cap, [a + b for a, b in zip(self.coeffs, other.coeffs)])
        coeffs = list(self.coeffs)
        coeffs[0] = coeffs[0] + other
        return TruncatedSeries(self.cap, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.cap, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -1 * other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            if other.cap != self.cap:
                raise ValueError("mixed truncation caps")
            zero = self._zero()
            out = [zero] * (self.cap + 1)
            for i, a in enumerate(self.coeffs):
                if _is_zero(a):
                    continue
                for j in range(self.cap + 1 - i):
                    b = other.coeffs[j]
                    if not _is_zero(b):
                        out[i + j] = out[i + j] + a * b
            return TruncatedSeries(self.cap, out)
        return TruncatedSeries(self.cap, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def scalar_mul(self, a):
        return TruncatedSeries(self.cap, [c * a for c in self.coeffs])

    def coeff(self, v: int):
        if not 0 <= v <= self.cap:
            raise IndexError(f"coefficient {v} outside 0..{self.cap}")
        return self.coeffs[v]

    def truncate(self, cap: int) -> "TruncatedSeries":
        if cap > self.cap:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(cap, self.coeffs[: cap + 1])

    def stretch(self, l: int) -> "TruncatedSeries":
        """Substitute z -> z^l, truncating at the same cap."""
        if not isinstance(l, int) or l < 1:
            raise ValueError("need l >= 1")
        zero = self._zero()
        out = [zero] * (self.cap + 1)
        for e, c in enumerate(self.coeffs):
            if e * l <= self.cap:
                out[e * l] = c
            else:
                break
        return TruncatedSeries(self.cap, out)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term.

        Recurrence from E' = s'E:  n*e_n = sum_{k=1..n} k s_k e_{n-k}.
        """
        if not _is_zero(self.coeffs[0]):
            raise ValueError("exp needs a zero constant term")
        zero = self._zero()
        out = [zero] * (self.cap + 1)
        out[0] = zero + 1
        for n in range(1, self.cap + 1):
            acc = zero
            for k in range(1, n + 1):
                sk = self.coeffs[k]
                if not _is_zero(sk):
                    acc = acc + (sk * out[n - k]) * k
            out[n] = acc * Fraction(1, n)
        return TruncatedSeries(self.cap, out)

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term one.

        Recurrence from s' = l's:  l_n = s_n - (1/n) sum_{k<n} k l_k s_{n-k}.
        """
        if not _is_zero(self.coeffs[0] - 1):
            raise ValueError("log needs constant term 1")
        zero = self._zero()
        out = [zero] * (self.cap + 1)
        for n in range(1, self.cap + 1):
            acc = zero
            for k in range(1, n):
                lk = out[k]
                if not _is_zero(lk):
                    acc = acc + (lk * self.coeffs[n - k]) * k
            out[n] = self.coeffs[n] - acc * Fraction(1, n)
        return TruncatedSeries(self.cap, out)

    def pow_scalar(self, alpha) -> "TruncatedSeries":
        """s^alpha := exp(alpha * log s) for any ring element alpha."""
        return self.log().scalar_mul(alpha).exp()

    def __repr__(self):
        return f"TruncatedSeries(cap={self.cap}, {self.coeffs})"
