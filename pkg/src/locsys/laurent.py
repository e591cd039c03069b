"""Exact sparse Laurent polynomials carrying the Weil symmetry, plus curves
over finite fields and certified integer evaluation at their Frobenius
eigenvalues.

A polynomial lives in Q[t^{+-1}, z_1^{+-1}, ..., z_g^{+-1}][y] where y is an
auxiliary nonnegative-power variable reserved for the genus offset g-1 (the
CLI renders it as ``(g-1)``).  Term keys are ``(t_exp, z_exps, y_exp)`` and
the canonical term order is lexicographic on the key, which makes rendering
and JSON serialization byte-reproducible.
"""

from __future__ import annotations

import json
import warnings
from fractions import Fraction

import mpmath


class DimensionMismatch(ValueError):
    """Operands built over a different number of z-variables."""


class DivisibilityError(ArithmeticError):
    """Exact division failed; carries the offending remainder."""

    def __init__(self, message, remainder):
        super().__init__(message)
        self.remainder = remainder


class InvarianceError(ValueError):
    """A Weil-invariant polynomial was required."""


class PrecisionError(RuntimeError):
    """Certified evaluation could not isolate an integer below the ceiling."""


def _coeff(c):
    """Normalize to int when integral, Fraction otherwise; the two mix freely
    in arithmetic and integers keep the hot loops fast."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, str):
        return _coeff(Fraction(c))
    raise TypeError(f"unsupported coefficient {c!r}")


class LaurentPoly:
    """Sparse exact Laurent polynomial in t, z_1..z_g and the genus-offset
    variable.  Immutable by convention: no method mutates ``terms``."""

    __slots__ = ("g", "terms")

    def __init__(self, g: int, terms=None):
        if g < 0:
            raise ValueError("need g >= 0")
        self.g = g
        clean = {}
        if terms:
            for key, c in terms.items():
                c = _coeff(c)
                if c == 0:
                    continue
                et, ez, ey = key
                ez = tuple(ez)
                if len(ez) != g:
                    raise DimensionMismatch(f"exponent vector {ez} has length != g={g}")
                if ey < 0:
                    raise ValueError("genus-offset exponent must be nonnegative")
                k = (et, ez, ey)
                clean[k] = clean.get(k, 0) + c
                if clean[k] == 0:
                    del clean[k]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, g):
        return cls(g)

    @classmethod
    def const(cls, g, c):
        return cls(g, {(0, (0,) * g, 0): _coeff(c)})

    @classmethod
    def monomial(cls, g, c, t=0, z=None, y=0):
        z = tuple(z) if z is not None else (0,) * g
        return cls(g, {(t, z, y): _coeff(c)})

    @classmethod
    def t_var(cls, g):
        return cls.monomial(g, 1, t=1)

    @classmethod
    def z_var(cls, g, i):
        z = [0] * g
        z[i] = 1
        return cls.monomial(g, 1, z=z)

    @classmethod
    def genus_offset(cls, g):
        return cls.monomial(g, 1, y=1)

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if self.g != other.g:
            raise DimensionMismatch(f"mixed g: {self.g} vs {other.g}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.g, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s == 0:
                terms.pop(k, None)
            else:
                terms[k] = s
        out = LaurentPoly(self.g)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly(self.g)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.g, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if c == 0:
                return LaurentPoly.zero(self.g)
            out = LaurentPoly(self.g)
            out.terms = {k: _coeff(v * c) for k, v in self.terms.items()}
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms = {}
        get = terms.get
        for (t1, z1, y1), c1 in self.terms.items():
            for (t2, z2, y2), c2 in other.terms.items():
                k = (t1 + t2, tuple(map(int.__add__, z1, z2)), y1 + y2)
                terms[k] = get(k, 0) + c1 * c2
        out = LaurentPoly(self.g)
        out.terms = {k: c for k, c in terms.items() if c != 0}
        return out

    __rmul__ = __mul__

    def scalar_mul(self, c):
        return self * c

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = LaurentPoly.const(self.g, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.g, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.g == other.g and self.terms == other.terms

    def __hash__(self):
        return hash((self.g, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- structure maps ----------------------------------------------------

    def frobenius_substitute(self, k: int) -> "LaurentPoly":
        """t -> t^k and z_i -> z_i^k; the genus-offset exponent is untouched."""
        if not isinstance(k, int) or k < 1:
            raise ValueError("need k >= 1")
        out = LaurentPoly(self.g)
        out.terms = {
            (et * k, tuple(e * k for e in ez), ey): c
            for (et, ez, ey), c in self.terms.items()
        }
        return out

    def _swap(self, i, j):
        out = LaurentPoly(self.g)
        terms = {}
        for (et, ez, ey), c in self.terms.items():
            z = list(ez)
            z[i], z[j] = z[j], z[i]
            terms[(et, tuple(z), ey)] = c
        out.terms = terms
        return out

    def _flip(self, i):
        # z_i -> t * z_i^{-1}
        terms = {}
        for (et, ez, ey), c in self.terms.items():
            z = list(ez)
            e = z[i]
            z[i] = -e
            k = (et + e, tuple(z), ey)
            s = terms.get(k, 0) + c
            if s == 0:
                terms.pop(k, None)
            else:
                terms[k] = s
        out = LaurentPoly(self.g)
        out.terms = terms
        return out

    def is_weil_invariant(self) -> bool:
        """Fixed by every z_i <-> z_j swap and every z_i -> t z_i^{-1} flip."""
        for i in range(self.g - 1):
            if self._swap(i, i + 1) != self:
                return False
        for i in range(self.g):
            if self._flip(i) != self:
                return False
        return True

    def satisfies_positivity(self) -> bool:
        """Every monomial t^m z^n has m + sum_i min(n_i, 0) >= 0."""
        for (et, ez, _ey) in self.terms:
            if et + sum(min(e, 0) for e in ez) < 0:
                return False
        return True

    # -- division ----------------------------------------------------------

    def _valuations(self):
        """Componentwise minimum exponents over the support (exact per-variable
        valuations, since the coefficient field makes this ring a domain)."""
        keys = list(self.terms)
        vt = min(k[0] for k in keys)
        vz = tuple(min(k[1][i] for k in keys) for i in range(self.g))
        vy = min(k[2] for k in keys)
        return vt, vz, vy

    def _shift(self, dt, dz, dy):
        out = LaurentPoly(self.g)
        out.terms = {
            (et + dt, tuple(a + b for a, b in zip(ez, dz)), ey + dy): c
            for (et, ez, ey), c in self.terms.items()
        }
        return out

    def exact_divide(self, d: "LaurentPoly") -> "LaurentPoly":
        """Quotient q with q*d == self, or DivisibilityError with remainder.

        Valuations of exact products add per variable, so both operands are
        shifted into the polynomial cone and reduced there; lex order on the
        cone is a well-order, so the reduction terminates.
        """
        if not isinstance(d, LaurentPoly):
            raise TypeError("divisor must be a LaurentPoly")
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.g)

        pt, pz, py = self._valuations()
        dt, dz, dy = d._valuations()
        if py - dy < 0:
            raise DivisibilityError("quotient needs a negative genus-offset power", self)
        num = self._shift(-pt, tuple(-v for v in pz), -py)
        den = d._shift(-dt, tuple(-v for v in dz), -dy)

        lt_d = max(den.terms)
        cd = den.terms[lt_d]
        quotient = LaurentPoly.zero(self.g)
        rem = num
        while not rem.is_zero():
            lt_r = max(rem.terms)
            et = lt_r[0] - lt_d[0]
            ez = tuple(a - b for a, b in zip(lt_r[1], lt_d[1]))
            ey = lt_r[2] - lt_d[2]
            if et < 0 or ey < 0 or any(e < 0 for e in ez):
                raise DivisibilityError("not exactly divisible", rem)
            ratio = Fraction(rem.terms[lt_r]) / cd
            mono = LaurentPoly.monomial(self.g, ratio, t=et, z=ez, y=ey)
            quotient = quotient + mono
            rem = rem - mono * den
        return quotient._shift(pt - dt, tuple(a - b for a, b in zip(pz, dz)), py - dy)

    # -- evaluation --------------------------------------------------------

    def substitute(self, t_value, z_values, y_value) -> Fraction:
        """Exact evaluation at rational points (used for values like t=z=1)."""
        t_value = Fraction(t_value)
        z_values = [Fraction(v) for v in z_values]
        if len(z_values) != self.g:
            raise DimensionMismatch("wrong number of z values")
        y_value = Fraction(y_value)
        total = Fraction(0)
        for (et, ez, ey), c in self.terms.items():
            v = c * t_value ** et * y_value ** ey
            for zv, e in zip(z_values, ez):
                v *= zv ** e
            total += v
        return total

    def weight(self):
        """Top weight for deg t = 2, deg z_i = 1, and the list of top terms."""
        if self.is_zero():
            return None, []
        best = None
        tops = []
        for key in self.terms:
            w = 2 * key[0] + sum(key[1])
            if best is None or w > best:
                best, tops = w, [key]
            elif w == best:
                tops.append(key)
        return best, sorted(tops)

    # -- serialization -----------------------------------------------------

    def to_obj(self):
        return {
            "g": self.g,
            "terms": [
                {"c": str(c), "t": k[0], "z": list(k[1]), "gamma": k[2]}
                for k, c in sorted(self.terms.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_obj(cls, obj):
        g = int(obj["g"])
        terms = {}
        for term in obj["terms"]:
            key = (int(term["t"]), tuple(int(e) for e in term["z"]), int(term.get("gamma", 0)))
            terms[key] = Fraction(term["c"])
        return cls(g, terms)

    @classmethod
    def from_json(cls, text):
        return cls.from_obj(json.loads(text))

    def render(self, gamma_label="(g-1)") -> str:
        if self.is_zero():
            return "0"
        chunks = []
        for (et, ez, ey), c in sorted(self.terms.items(), reverse=True):
            factors = []
            if et:
                factors.append("t" if et == 1 else f"t^{et}")
            for i, e in enumerate(ez):
                if e:
                    name = f"z{i + 1}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            if ey:
                factors.append(gamma_label if ey == 1 else f"{gamma_label}^{ey}")
            if not factors:
                chunks.append(str(c))
                continue
            body = "*".join(factors)
            if c == 1:
                chunks.append(body)
            elif c == -1:
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{c}*{body}")
        out = chunks[0]
        for chunk in chunks[1:]:
            out += " - " + chunk[1:] if chunk.startswith("-") else " + " + chunk
        return out

    def __repr__(self):
        return f"LaurentPoly(g={self.g}, {self.render()})"


def pic_polynomial(g: int) -> LaurentPoly:
    """prod_i (1 - z_i)(1 - t z_i^{-1}); its curve values are |Pic^0|."""
    p = LaurentPoly.const(g, 1)
    one = LaurentPoly.const(g, 1)
    t = LaurentPoly.t_var(g)
    for i in range(g):
        zi = LaurentPoly.z_var(g, i)
        zi_inv = LaurentPoly.monomial(g, 1, z=[-1 if j == i else 0 for j in range(g)])
        p = p * (one - zi) * (one - t * zi_inv)
    return p


def weil_symmetrize(mono: LaurentPoly) -> LaurentPoly:
    """Group-average of a polynomial over all z-swaps and z_i -> t z_i^{-1}
    flips (without the 1/|group| normalization, to stay integral)."""
    import itertools

    g = mono.g
    total = LaurentPoly.zero(g)
    for perm in itertools.permutations(range(g)):
        base = LaurentPoly(g)
        base.terms = {
            (et, tuple(ez[perm[i]] for i in range(g)), ey): c
            for (et, ez, ey), c in mono.terms.items()
        }
        for flips in itertools.product((False, True), repeat=g):
            q = base
            for i, do in enumerate(flips):
                if do:
                    q = q._flip(i)
            total = total + q
    return total


# --------------------------------------------------------------------------
# Curves over finite fields


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, q + 1):
        if p * p > q:
            return True  # q itself is prime
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return False


class CurveInput:
    """A curve given by genus, field size, and the integer numerator
    coefficients b_0..b_{2g} of its zeta function, P(z) = prod (1 - a_i z)."""

    def __init__(self, g: int, q: int, numerator):
        if g < 1:
            raise ValueError("need genus >= 1")
        if not _is_prime_power(q):
            raise ValueError(f"q={q} is not a prime power >= 2")
        numerator = [int(b) for b in numerator]
        if len(numerator) != 2 * g + 1:
            raise ValueError("numerator must have 2g+1 coefficients")
        if numerator[0] != 1:
            raise ValueError("numerator must have constant term 1")
        self.g = g
        self.q = q
        self.numerator = numerator
        self._warn_if_not_weil()

    def functional_equation_holds(self) -> bool:
        b, g, q = self.numerator, self.g, self.q
        return all(b[2 * g - k] == q ** (g - k) * b[k] for k in range(0, g + 1))

    def _warn_if_not_weil(self):
        with mpmath.workdps(40):
            try:
                roots = mpmath.polyroots(list(reversed(self.numerator)),
                                         maxsteps=200, extraprec=80)
            except mpmath.libmp.NoConvergence:
                return
            target = mpmath.sqrt(self.q)
            for r in roots:
                # reciprocal roots a_i = 1/r must sit on |a| = sqrt(q)
                if abs(abs(1 / r) - target) > 1e-6 * float(target):
                    warnings.warn(
                        f"numerator root modulus {abs(1 / r)} differs from sqrt(q)",
                        stacklevel=3,
                    )
                    return

    def to_obj(self):
        return {"g": self.g, "q": self.q, "numerator": list(self.numerator)}

    @classmethod
    def from_obj(cls, obj):
        return cls(int(obj["g"]), int(obj["q"]), obj["numerator"])

    def __repr__(self):
        return f"CurveInput(g={self.g}, q={self.q}, numerator={self.numerator})"


def _power_sums_from_coeffs(b, count):
    """Newton power sums p_1..p_count of the reciprocal roots of
    P(z) = sum b_j z^j = prod (1 - a_i z); all values are integers."""
    deg = len(b) - 1
    e = [Fraction((-1) ** j * b[j]) for j in range(deg + 1)]  # elementary symmetric
    p = [Fraction(0)] * (count + 1)
    for m in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, m):
            if i <= deg:
                acc += (-1) ** (i - 1) * e[i] * p[m - i]
        if m <= deg:
            acc += (-1) ** (m - 1) * m * e[m]
        p[m] = acc
    return p


def graeffe_power(curve: CurveInput, k: int):
    """Integer coefficients of prod_i (1 - a_i^k z), computed exactly through
    Newton's identities on power sums."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("need k >= 1")
    if k == 1:
        return list(curve.numerator)
    deg = 2 * curve.g
    p = _power_sums_from_coeffs(curve.numerator, deg * k)
    pk = [Fraction(0)] + [p[m * k] for m in range(1, deg + 1)]
    e = [Fraction(1)]
    for m in range(1, deg + 1):
        acc = Fraction(0)
        for i in range(1, m + 1):
            acc += (-1) ** (i - 1) * e[m - i] * pk[i]
        e.append(acc / m)
    out = []
    for j in range(deg + 1):
        c = (-1) ** j * e[j]
        if c.denominator != 1:
            raise ArithmeticError("power transform produced a non-integer")
        out.append(int(c))
    return out


def _poly_derivative(coeffs):
    # coeffs high to low degree
    deg = len(coeffs) - 1
    return [c * (deg - i) for i, c in enumerate(coeffs[:-1])]


def _poly_divmod(num, den):
    num = list(num)
    deg_d = len(den) - 1
    lead = den[0]
    quot = []
    while len(num) - 1 >= deg_d:
        f = num[0] / lead
        quot.append(f)
        for i in range(deg_d + 1):
            num[i] -= f * den[i]
        num.pop(0)
    while num and num[0] == 0:
        num.pop(0)
    return quot, num


def _poly_gcd(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    return [c / a[0] for c in a]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = [Fraction(0)] * (n - len(a)) + list(a)
    b = [Fraction(0)] * (n - len(b)) + list(b)
    out = [x - y for x, y in zip(a, b)]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _squarefree_factors(coeffs):
    """Yun decomposition of an exact polynomial: list of (multiplicity,
    squarefree factor), coefficients high to low."""
    a = [Fraction(c) for c in coeffs]
    while a and a[0] == 0:
        a.pop(0)
    if len(a) <= 1:
        return []
    da = _poly_derivative(a)
    g = _poly_gcd(a, da)
    if len(g) == 1:
        return [(1, a)]
    c, _ = _poly_divmod(a, g)
    dg, _ = _poly_divmod(da, g)
    d = _poly_sub(dg, _poly_derivative(c))
    out = []
    i = 1
    while len(c) > 1:
        p = _poly_gcd(c, d)
        if len(p) > 1:
            out.append((i, p))
        c, _ = _poly_divmod(c, p)
        dp, _ = _poly_divmod(d, p)
        d = _poly_sub(dp, _poly_derivative(c))
        i += 1
    return out


class _CInterval:
    """Rectangle complex interval on top of mpmath.iv real intervals."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def from_point(cls, z, radius):
        radius = mpmath.mpf(radius)
        r = mpmath.iv.mpf([z.real - radius, z.real + radius])
        i = mpmath.iv.mpf([z.imag - radius, z.imag + radius])
        return cls(r, i)

    @classmethod
    def exact(cls, fr: Fraction):
        v = mpmath.iv.mpf(fr.numerator) / mpmath.iv.mpf(fr.denominator)
        return cls(v, mpmath.iv.mpf(0))

    def __add__(self, other):
        return _CInterval(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        return _CInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def reciprocal(self):
        d = self.re * self.re + self.im * self.im
        return _CInterval(self.re / d, -self.im / d)

    def power(self, e: int):
        if e < 0:
            return self.reciprocal().power(-e)
        out = _CInterval(mpmath.iv.mpf(1), mpmath.iv.mpf(0))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def widths(self):
        return float(self.re.delta), float(self.im.delta)


def _pair_roots(roots, target_product, tol):
    """Pair the root multiset so each pair multiplies to target_product."""
    left = list(roots)
    pairs = []
    while left:
        a = max(left, key=abs)
        left.remove(a)
        want = target_product / a
        b = min(left, key=lambda r: abs(r - want))
        if abs(b - want) > tol * (1 + abs(want)):
            return None
        left.remove(b)
        pairs.append((a, b))
    return pairs


def evaluate_at_curve(p: LaurentPoly, curve: CurveInput, k: int, gamma_value: int,
                      max_prec: int = 1 << 13) -> int:
    """Value of a Weil-invariant p at t = q^k, z_i = sigma_i^k.

    The sigma_i^k are one eigenvalue from each Frobenius pair of the base
    change; Weil invariance makes the value independent of which one.  The
    result is certified by rectangle interval arithmetic: precision doubles
    from 128 bits until the enclosure is narrower than 1/2, then the unique
    enclosed integer is returned.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("need k >= 1")
    if curve.g != p.g:
        raise DimensionMismatch(f"curve genus {curve.g} != polynomial g {p.g}")
    if not p.is_weil_invariant():
        raise InvarianceError("polynomial is not Weil-invariant")
    if p.is_zero():
        return 0

    coeffs = graeffe_power(curve, k)
    factors = _squarefree_factors(coeffs)
    tq = Fraction(curve.q) ** k
    prec = 128
    while prec <= max_prec:
        with mpmath.workprec(prec):
            mpmath.iv.prec = prec
            try:
                roots = []
                err = mpmath.mpf(0)
                for mult, factor in factors:
                    fr, fe = mpmath.polyroots(
                        [mpmath.mpf(c.numerator) / c.denominator for c in factor],
                        maxsteps=200, extraprec=prec, error=True,
                    )
                    roots.extend(r for r in fr for _ in range(mult))
                    err = max(err, fe)
            except mpmath.libmp.NoConvergence:
                prec *= 2
                continue
            radius = max(float(err), 2.0 ** (20 - prec)) * 16
            pairs = _pair_roots([mpmath.mpc(r) for r in roots],
                                mpmath.mpf(curve.q) ** k, 1e-6)
            if pairs is None:
                prec *= 2
                continue
            zs = [_CInterval.from_point(a, radius) for a, _ in pairs]

            total = _CInterval(mpmath.iv.mpf(0), mpmath.iv.mpf(0))
            for (et, ez, ey), c in p.terms.items():
                scalar = Fraction(c) * tq ** et * Fraction(gamma_value) ** ey
                term = _CInterval.exact(scalar)
                for zi, e in zip(zs, ez):
                    if e:
                        term = term * zi.power(e)
                total = total + term
            wr, wi = total.widths()
            if wr < 0.5 and wi < 0.5:
                lo = mpmath.ceil(total.re.a)
                hi = mpmath.floor(total.re.b)
                if lo == hi and total.im.a <= 0 <= total.im.b:
                    return int(lo)
        prec *= 2
    raise PrecisionError(f"no certified integer below {max_prec} bits")
