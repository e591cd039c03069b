import random
from fractions import Fraction

import pytest

from locsys.counting import FreePoly
from locsys.laurent import LaurentPoly
from locsys.series import TruncatedSeries


def series(cap, *coeffs):
    cs = [Fraction(c) for c in coeffs] + [Fraction(0)] * (cap + 1 - len(coeffs))
    return TruncatedSeries(cap, cs)


def rand_series(rng, cap, constant):
    coeffs = [Fraction(constant)] + [
        Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cap)
    ]
    return TruncatedSeries(cap, coeffs)


def test_exp_of_z():
    assert series(3, 0, 1).exp() == series(3, 1, 1, Fraction(1, 2), Fraction(1, 6))


def test_exp_of_zero():
    assert series(4, 0).exp() == series(4, 1)


def test_exp_requires_zero_constant():
    with pytest.raises(ValueError):
        series(2, 1, 1).exp()


def test_log_of_one():
    assert series(3, 1).log() == series(3, 0)


def test_log_requires_unit_constant():
    with pytest.raises(ValueError):
        series(2, 0, 1).log()


def test_log_of_square():
    s = series(5, 1, 1)
    assert (s * s).log() == s.log().scalar_mul(Fraction(2))


def test_exp_log_roundtrips():
    rng = random.Random(0)
    for _ in range(25):
        cap = rng.randint(1, 6)
        s = rand_series(rng, cap, 0)
        assert s.exp().log() == s
        u = rand_series(rng, cap, 1)
        assert u.log().exp() == u


def test_pow_scalar_examples():
    s = series(2, 1, 1)
    assert s.pow_scalar(Fraction(2)) == series(2, 1, 2, 1)
    assert s.pow_scalar(Fraction(0)) == series(2, 1)
    h = series(4, 1, 1).pow_scalar(Fraction(1, 2))
    assert h * h == series(4, 1, 1)


def test_pow_scalar_additivity():
    rng = random.Random(1)
    for _ in range(15):
        cap = rng.randint(1, 5)
        s = rand_series(rng, cap, 1)
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        b = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        assert s.pow_scalar(a) * s.pow_scalar(b) == s.pow_scalar(a + b)


def test_stretch():
    s = series(4, 1, 1)
    assert s.stretch(2) == series(4, 1, 0, 1)
    assert s.stretch(1) == s
    assert s.stretch(2).coeff(3) == 0


def test_stretch_commutes_with_mul_and_pow():
    rng = random.Random(2)
    for _ in range(15):
        cap = rng.randint(2, 6)
        s = rand_series(rng, cap, 1)
        u = rand_series(rng, cap, 1)
        l = rng.randint(1, 3)
        assert (s * u).stretch(l) == s.stretch(l) * u.stretch(l)
        a = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        assert s.pow_scalar(a).stretch(l) == s.stretch(l).pow_scalar(a)


def test_coeff_range_checked():
    with pytest.raises(IndexError):
        series(2, 1).coeff(3)


def test_coeff_matches_direct_convolution():
    # brute-force product expansion as an independent oracle
    rng = random.Random(3)
    for _ in range(10):
        cap = rng.randint(2, 6)
        s = rand_series(rng, cap, 0)
        e = s.exp()
        brute = [Fraction(0)] * (cap + 1)
        term = [Fraction(1)] + [Fraction(0)] * cap
        fact = 1
        for m in range(cap + 1):
            for i, c in enumerate(term):
                brute[i] += c / fact
            fact *= m + 1
            nxt = [Fraction(0)] * (cap + 1)
            for i, a in enumerate(term):
                if a:
                    for j, b in enumerate(s.coeffs):
                        if b and i + j <= cap:
                            nxt[i + j] += a * b
            term = nxt
        for v in range(cap + 1):
            assert e.coeff(v) == brute[v]


def test_laurent_coefficients():
    g = 1
    z = LaurentPoly.z_var(g, 0)
    zero = LaurentPoly.zero(g)
    s = TruncatedSeries(2, [zero, z, zero])
    e = s.exp()
    assert e.coeff(0) == LaurentPoly.const(g, 1)
    assert e.coeff(1) == z
    assert e.coeff(2) == z * z * Fraction(1, 2)


def test_free_poly_coefficients():
    x = FreePoly.symbol(1, 1)
    zero = FreePoly.zero()
    s = TruncatedSeries(2, [zero, x, zero])
    e = s.exp()
    assert e.coeff(2) == x * x * Fraction(1, 2)
    assert s.scalar_mul(FreePoly.gamma()).coeff(1) == FreePoly.gamma() * x
