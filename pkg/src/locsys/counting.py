"""The counting engine.

Two tables drive everything: a C-table holding, for each rank s and field
extension degree k, the number C[s,k] of Frobenius^k-fixed irreducible rank-s
local systems (as a Laurent polynomial or as a free symbol), and an A-table
holding the counts of geometrically indecomposable rank-n degree-coprime
vector bundles.  The master formula expresses A_n in terms of the C[s,k]
with s*k <= n; inverting it rank by rank recovers the C's, hence the
polynomials whose curve values are the counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .combinat import divisors, mobius, partitions
from .laurent import LaurentPoly, pic_polynomial
from .series import TruncatedSeries

GAMMA_ATOM = ("y",)


class EntryMissing(LookupError):
    """A required C-table entry is absent."""


class ConsistencyError(RuntimeError):
    """The unknown top-rank symbol did not enter with coefficient one."""


class IntegralityError(ArithmeticError):
    """A count polynomial came out with non-integer coefficients."""


@dataclass(frozen=True, order=True)
class CSymbol:
    """Free symbol for the count of rank-s systems over the degree-k extension."""

    s: int
    k: int

    def __post_init__(self):
        if self.s < 1 or self.k < 1:
            raise ValueError("need s, k >= 1")

    @property
    def atom(self):
        return ("C", self.s, self.k)


class FreePoly:
    """Polynomial over Q in the genus-offset variable and the C-symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                mono = tuple(sorted((a, e) for a, e in mono if e))
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if clean[mono] == 0:
                    del clean[mono]
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c)})

    @classmethod
    def atom(cls, a, exp=1, coeff=1):
        return cls({((a, exp),): Fraction(coeff)})

    @classmethod
    def gamma(cls, coeff=1):
        return cls.atom(GAMMA_ATOM, coeff=coeff)

    @classmethod
    def symbol(cls, s, k):
        return cls.atom(CSymbol(s, k).atom)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FreePoly.const(other)
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FreePoly.const(other)
        if not isinstance(other, FreePoly):
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        out = FreePoly()
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = FreePoly()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FreePoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return FreePoly.zero()
            out = FreePoly()
            out.terms = {m: v * c for m, v in self.terms.items()}
            return out
        if not isinstance(other, FreePoly):
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                d = dict(d1)
                for a, e in m2:
                    d[a] = d.get(a, 0) + e
                key = tuple(sorted(d.items()))
                s = terms.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        out = FreePoly()
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = FreePoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def c_degree_part(self, degree: int) -> "FreePoly":
        """Sum of the monomials of total degree `degree` in the C-symbols."""
        out = FreePoly()
        out.terms = {
            m: c
            for m, c in self.terms.items()
            if sum(e for a, e in m if a[0] == "C") == degree
        }
        return out

    def divide_exact(self, scalar, gamma_power: int = 0) -> "FreePoly":
        """Divide by scalar * gamma^power; every monomial must carry the power."""
        scalar = Fraction(scalar)
        terms = {}
        for m, c in self.terms.items():
            d = dict(m)
            have = d.get(GAMMA_ATOM, 0)
            if have < gamma_power:
                raise IntegralityError("sum is not divisible by the genus factor")
            if have == gamma_power:
                d.pop(GAMMA_ATOM, None)
            else:
                d[GAMMA_ATOM] = have - gamma_power
            terms[tuple(sorted(d.items()))] = c / scalar
        out = FreePoly()
        out.terms = terms
        return out

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def non_integer_terms(self) -> dict:
        """Monomials whose coefficient is not an integer.

        The count polynomials in the C-symbols are not integral in general
        (rank 4 already has 2/3 * (g-1) C[1,1] C[1,3]); integrality of the
        final counts only appears after substituting counts that share one
        system of Weil numbers, which is what the divisibility suite checks.
        """
        return {m: c for m, c in self.terms.items() if c.denominator != 1}

    def substitute(self, values, const):
        """Evaluate with atom -> value (values may live in any ring); `const`
        embeds rationals into that ring."""
        total = const(0)
        for m, c in self.terms.items():
            v = const(c)
            for a, e in m:
                v = v * (values[a] ** e)
            total = total + v
        return total

    @staticmethod
    def _atom_label(a):
        if a == GAMMA_ATOM:
            return "(g-1)"
        return f"C[{a[1]},{a[2]}]"

    def render(self) -> str:
        if not self.terms:
            return "0"

        def sortkey(item):
            mono, _ = item
            cdeg = sum(e for a, e in mono if a[0] == "C")
            top = max((a[1] * a[2], a[1]) for a, e in mono if a[0] == "C") if cdeg else (0, 0)
            return (-top[0], -top[1], cdeg, mono)

        chunks = []
        for mono, c in sorted(self.terms.items(), key=sortkey):
            factors = []
            for a, e in sorted(mono, key=lambda ae: (ae[0] != GAMMA_ATOM, ae[0])):
                label = self._atom_label(a)
                factors.append(label if e == 1 else f"{label}^{e}")
            body = "*".join(factors)
            if not body:
                chunks.append(str(c))
            elif c == 1:
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
        return f"FreePoly({self.render()})"


# --------------------------------------------------------------------------
# Tables


class CTable:
    """Counts C[s,k].  Symbolic mode hands out free symbols; concrete mode
    stores the rank-s polynomial for k=1 and derives every other k by the
    Frobenius substitution, so the compatibility C[s,k] = C[s,1](t^k, z^k)
    holds by construction."""

    def __init__(self, mode, g=None, base=None):
        if mode not in ("symbolic", "concrete"):
            raise ValueError("mode must be 'symbolic' or 'concrete'")
        self.mode = mode
        self.g = g
        self.base = dict(base or {})
        self._cache = {}

    @classmethod
    def symbolic(cls):
        return cls("symbolic")

    @classmethod
    def concrete(cls, g, base):
        for s, poly in base.items():
            if poly.g != g:
                raise ValueError(f"entry {s} has wrong number of z-variables")
        return cls("concrete", g=g, base=base)

    def with_entry(self, s, poly):
        base = dict(self.base)
        base[s] = poly
        return CTable.concrete(self.g, base)

    def zero(self):
        return FreePoly.zero() if self.mode == "symbolic" else LaurentPoly.zero(self.g)

    def one(self):
        return FreePoly.const(1) if self.mode == "symbolic" else LaurentPoly.const(self.g, 1)

    def entry(self, s: int, k: int):
        if self.mode == "symbolic":
            return FreePoly.symbol(s, k)
        if s not in self.base:
            raise EntryMissing(f"no C-table entry for rank s={s}, extension k={k}")
        if (s, k) not in self._cache:
            self._cache[(s, k)] = self.base[s].frobenius_substitute(k)
        return self._cache[(s, k)]

    def to_obj(self):
        return {"entries": {str(s): p.to_obj() for s, p in sorted(self.base.items())}}

    @classmethod
    def from_obj(cls, obj, g):
        base = {int(s): LaurentPoly.from_obj(p) for s, p in obj["entries"].items()}
        return cls.concrete(g, base)


class ATable:
    """Indecomposable-bundle counts for ranks >= 2 (rank 1 is the built-in
    Picard polynomial).  Entries are validated to be Weil-invariant and to
    satisfy the positivity constraint on load."""

    def __init__(self, g, entries):
        self.g = g
        self.entries = {}
        for n, poly in entries.items():
            n = int(n)
            if poly.g != g:
                raise ValueError(f"entry {n} has wrong number of z-variables")
            if not poly.is_weil_invariant():
                raise ValueError(f"A-table entry {n} is not Weil-invariant")
            if not poly.satisfies_positivity():
                raise ValueError(f"A-table entry {n} violates positivity")
            self.entries[n] = poly

    def __getitem__(self, n):
        if n not in self.entries:
            raise EntryMissing(f"no A-table entry for rank {n}")
        return self.entries[n]

    def to_obj(self):
        return {"entries": {str(n): p.to_obj() for n, p in sorted(self.entries.items())}}

    def to_json(self):
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_obj(cls, obj, g):
        return cls(g, {int(n): LaurentPoly.from_obj(p) for n, p in obj["entries"].items()})

    @classmethod
    def from_json(cls, text, g):
        return cls.from_obj(json.loads(text), g)


# --------------------------------------------------------------------------
# The master formula


def count_exponent(ctable: CTable, l: int, cap: int) -> TruncatedSeries:
    """sum over s,k >= 1 with s*k*l <= cap of (s/k) C[s,kl] z^{skl}."""
    zero = ctable.zero()
    terms = []
    for s in range(1, cap + 1):
        for k in range(1, cap // (s * l) + 1):
            terms.append((s * k * l, ctable.entry(s, k * l) * Fraction(s, k)))
    return TruncatedSeries.from_terms(cap, terms, zero)


def count_series(ctable: CTable, l: int, cap: int) -> TruncatedSeries:
    """The exponential generating series of the counts over the degree-l
    base change, already in the stretched variable z^l."""
    return count_exponent(ctable, l, cap).exp()


def _two_g_minus_2(genus):
    if genus is None:
        return FreePoly.gamma(coeff=2)
    return Fraction(2 * genus - 2)


def _exp_coeff_concrete(exponent, alpha: Fraction, a: int, g: int):
    """[z^a] of exp(alpha * exponent) for LaurentPoly coefficients, returned
    as (integer polynomial, rational scale).

    Denominators are cleared up front so the polynomial convolutions run in
    pure integer arithmetic: with M_m = D alpha E_m integral, the scaled
    coefficients f_n = n! D^n e_n satisfy
    f_n = sum_k k M_k f_{n-k} (n-1)!/(n-k)! D^{k-1}.
    """
    import math

    if a == 0:
        return LaurentPoly.const(g, 1), Fraction(1)
    scaled = []
    denom = 1
    for m in range(1, a + 1):
        em = exponent.coeff(m) * alpha
        scaled.append(em)
        for c in em.terms.values():
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ms = [LaurentPoly.zero(g)] + [em * denom for em in scaled]
    f = [LaurentPoly.const(g, 1)] + [LaurentPoly.zero(g)] * a
    for n in range(1, a + 1):
        acc = LaurentPoly.zero(g)
        for k in range(1, n + 1):
            if ms[k].is_zero() or f[n - k].is_zero():
                continue
            factor = k * (math.factorial(n - 1) // math.factorial(n - k)) * denom ** (k - 1)
            acc = acc + (ms[k] * f[n - k]) * factor
        f[n] = acc
    return f[a], Fraction(1, math.factorial(a) * denom ** a)


def a_from_c(n: int, genus, ctable: CTable):
    """Number of geometrically indecomposable bundles of rank n (for degrees
    coprime to n) as a polynomial in the counts C[s,k], s*k <= n.

    genus is an integer >= 2 for the concrete evaluation, or None for the
    symbolic genus-offset variable.  For n = 1 the value is C[1,1] itself
    and any genus >= 1 is accepted.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return ctable.entry(1, 1)
    if genus is not None and genus < 2:
        raise ValueError("need genus >= 2 for ranks >= 2")

    chi = _two_g_minus_2(genus)
    concrete = ctable.mode == "concrete"
    exponents = {}
    numerator = ctable.zero()
    for l in divisors(n):
        mu = mobius(l)
        if mu == 0:
            continue
        for lam in partitions(n):
            if any(a % l for a in lam.mult.values()):
                continue  # the z^{a_j} coefficient vanishes when l does not divide a_j
            term = ctable.one()
            scale = Fraction(mu, lam.num_parts())
            for j, aj in sorted(lam.mult.items()):
                if (l, aj) not in exponents:
                    exponents[(l, aj)] = count_exponent(ctable, l, aj)
                alpha = chi * Fraction(lam.s_weight(j), l)
                if concrete:
                    part, part_scale = _exp_coeff_concrete(
                        exponents[(l, aj)], alpha, aj, ctable.g
                    )
                    term = term * part
                    scale *= part_scale
                else:
                    term = term * exponents[(l, aj)].scalar_mul(alpha).exp().coeff(aj)
            numerator = numerator + term * scale
    if genus is None:
        return numerator.divide_exact(2 * n, gamma_power=1)
    return numerator * Fraction(1, n * (2 * genus - 2))


def c_from_a(n: int, g: int, atable: ATable, base_ctable: CTable | None = None) -> CTable:
    """Extend the C-table through rank n by inverting the master formula.

    Every monomial of the z^m coefficient of the rank-s formula has total
    weight m <= s in the (rank * extension) grading, so the unknown C[s,1]
    (weight s) can only enter linearly and never multiplied by another count.
    Its coefficient is measured at runtime by evaluating the formula on a
    table that is zero except for C[s,1] = 1, and must come out as exactly 1.
    Then C_s = A_s - (formula with the unknown set to zero).
    """
    if g < 2:
        raise ValueError("need genus >= 2")
    if base_ctable is None:
        base_ctable = CTable.concrete(g, {1: pic_polynomial(g)})
    table = base_ctable
    one = LaurentPoly.const(g, 1)
    for s in range(2, n + 1):
        zeros = CTable.concrete(g, {r: LaurentPoly.zero(g) for r in range(1, s)})
        probe = a_from_c(s, g, zeros.with_entry(s, one))
        if probe != one:
            raise ConsistencyError(
                f"rank-{s} unknown has coefficient {probe.render()}, expected 1"
            )
        v0 = a_from_c(s, g, table.with_entry(s, LaurentPoly.zero(g)))
        c_s = atable[s] - v0
        if any(c.denominator != 1 for c in c_s.terms.values()):
            raise IntegralityError(f"rank-{s} count polynomial is not integral")
        if not c_s.is_weil_invariant():
            raise ConsistencyError(f"rank-{s} count polynomial lost Weil invariance")
        table = table.with_entry(s, c_s)
    return table


def pic_quotient(p: LaurentPoly, g: int) -> LaurentPoly:
    """Exact quotient of p by the Picard polynomial prod (1-z_i)(1-t/z_i)."""
    if p.is_zero():
        return p
    return p.exact_divide(pic_polynomial(g))


def euler_characteristic(n: int, g: int) -> int:
    """sum over l | n of mu(l) mu(n/l) l^{2g-3}."""
    if n < 1 or g < 2:
        raise ValueError("need n >= 1 and g >= 2")
    return sum(mobius(l) * mobius(n // l) * l ** (2 * g - 3) for l in divisors(n))


def linear_part_check(n: int, g: int = 2) -> bool:
    """The part of the rank-n master formula that is linear in the C-symbols
    equals sum over d | n of C[d,1] (with no genus dependence)."""
    if g < 2:
        raise ValueError("need genus >= 2")
    full = a_from_c(n, None, CTable.symbolic())
    linear = full.c_degree_part(1)
    expected = FreePoly.zero()
    for d in divisors(n):
        expected = expected + FreePoly.symbol(d, 1)
    return linear == expected


def inertial_class_count(n: int, d: int, entry):
    """Number of inertial classes of rank-n systems whose twist-fixator has
    order exactly d:  (1/d) * sum over l | d of mu(l) C[n/d, d/l].

    `entry` is either a CTable or a callable (s, k) -> ring element.
    """
    if n % d:
        raise ValueError("d must divide n")
    lookup = entry.entry if isinstance(entry, CTable) else entry
    total = None
    for l in divisors(d):
        mu = mobius(l)
        if mu == 0:
            continue
        piece = lookup(n // d, d // l) * Fraction(mu, d)
        total = piece if total is None else total + piece
    return total


def orbit_inversion_check(r: int, dmax: int, otable) -> bool:
    """Plant orbit counts O_r(l), aggregate them into fixed-point counts
    C_r(X_d) = sum_{l | d} l O_r(l), and verify the Moebius inversion
    recovers each O_r(d)."""
    cvals = {}
    for d in range(1, dmax + 1):
        cvals[d] = sum(l * otable.get(l, 0) for l in divisors(d))
    for d in range(1, dmax + 1):
        got = inertial_class_count(r * d, d, lambda s, k: Fraction(cvals[k]))
        if got != Fraction(otable.get(d, 0)):
            return False
    return True
