import itertools
import math
import random
from fractions import Fraction

import mpmath
import pytest

from locsys.spectral import (
    Block,
    DiscretePairDatum,
    RationalFunc,
    aggregation_check,
    block_det_identity_check,
    chamber_limit,
    circle_count_check,
    cone_degree_one_identity,
    cone_fourier_average_check,
    cone_periodicity_check,
    cone_series_check,
    degree_floor_vector,
    det_slope,
    det_slope_identities_check,
    orbit_character_sum,
    orbit_character_sum_mobius,
    orbit_character_sum_root,
    pair_closed_form,
    pair_matrix,
    pair_weight,
    spanning_tree_sum,
    triple_oracle,
    zero_pole_count,
)


def random_symmetric_zero_sum(rng, n):
    rows = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[j][i] = rows[i][j]
    for i in range(n):
        rows[i][i] -= sum(rows[i], Fraction(0))
    return rows


def random_datum(rng, max_orbits=5):
    while True:
        blocks = []
        seen = set()
        total = 0
        for _ in range(rng.randint(1, 3)):
            d = rng.randint(1, 3)
            nu = rng.randint(1, 3)
            fix = rng.choice([f for f in range(1, d + 1) if d % f == 0])
            if (d, nu, fix) in seen:
                continue
            seen.add((d, nu, fix))
            m = rng.randint(1, 3)
            parts = []
            left = m
            while left:
                p = rng.randint(1, left)
                parts.append(p)
                left -= p
            blocks.append(Block(d, nu, fix, m, tuple(parts)))
            total += len(parts)
        if blocks and total <= max_orbits:
            return DiscretePairDatum(rng.choice([2, 3]), tuple(blocks))


class TestDetSlope:
    def test_zero_matrix(self):
        assert det_slope([[0] * 3 for _ in range(3)]) == 0

    def test_two_by_two(self):
        assert det_slope([[1, -1], [-1, 1]]) == 1

    def test_triangle_kirchhoff(self):
        rows = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
        assert det_slope(rows) == 3  # Cayley: 3 spanning trees

    def test_nonsingular_rejected(self):
        with pytest.raises(ValueError):
            det_slope([[1, 0], [0, 1]])

    def test_identities_random(self):
        rng = random.Random(0)
        for _ in range(50):
            n = rng.randint(2, 6)
            rows = random_symmetric_zero_sum(rng, n)
            u = [Fraction(rng.randint(1, 5)) for _ in range(n)]
            v = [Fraction(rng.randint(1, 5)) for _ in range(n)]
            assert det_slope_identities_check(rows, u, v)

    def test_identities_on_zero_matrix(self):
        rows = [[Fraction(0)] * 4 for _ in range(4)]
        assert det_slope_identities_check(rows, [1, 1, 1, 1], [1, 2, 3, 4])

    def test_zero_input_vector_rejected(self):
        rows = random_symmetric_zero_sum(random.Random(1), 3)
        with pytest.raises(ValueError):
            det_slope_identities_check(rows, [1, -1, 0], [1, 1, 1])


class TestSpanningTrees:
    def test_two_vertices(self):
        assert spanning_tree_sum(2, {(0, 1): Fraction(7)}) == 7

    def test_cayley_count(self):
        for r in (1, 2, 3, 4, 5):
            weights = {(i, j): 1 for i in range(r) for j in range(i + 1, r)}
            assert spanning_tree_sum(r, weights) == max(r ** (r - 2), 1)

    def test_against_matrix_slope(self):
        rng = random.Random(2)
        for _ in range(40):
            r = rng.randint(1, 6)
            weights = {(i, j): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                       for i in range(r) for j in range(i + 1, r)}
            rows = [[Fraction(0)] * r for _ in range(r)]
            for (i, j), w in weights.items():
                rows[i][j] = rows[j][i] = -w
            for i in range(r):
                rows[i][i] = -sum(rows[i], Fraction(0))
            assert Fraction(spanning_tree_sum(r, weights)) == det_slope(rows)


class TestBlockDet:
    def test_scalar_case(self):
        assert block_det_identity_check([[Fraction(1, 2)]], [[1, 3]])

    def test_zero_vectors(self):
        assert block_det_identity_check([[2, 1], [0, 1]], [[0], [0, 0]])

    def test_random(self):
        rng = random.Random(3)
        for _ in range(50):
            k = rng.randint(1, 3)
            a = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(k)]
                 for _ in range(k)]
            us = [[Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))]
                  for _ in range(k)]
            assert block_det_identity_check(a, us)


class TestZeroPoleCount:
    def test_distinct_unit_blocks(self):
        b = Block(1, 1, 1, 1, (1,))
        assert zero_pole_count(b, b, 2, same_inertial=False) == 2

    def test_same_block(self):
        b = Block(2, 1, 2, 1, (1,))
        assert zero_pole_count(b, b, 2, same_inertial=True) == 10

    def test_mixed_speh(self):
        b1 = Block(1, 3, 1, 1, (1,))
        b2 = Block(1, 1, 1, 1, (1,))
        assert zero_pole_count(b1, b2, 3, same_inertial=False) == 4


class TestPairMatrix:
    def test_single_orbit_degenerate(self):
        datum = DiscretePairDatum(2, (Block(1, 1, 1, 1, (1,)),))
        rows = pair_matrix(datum)
        assert rows == [[0]]
        assert det_slope(rows) == 1
        assert pair_closed_form(datum) == 1

    def test_two_identical_orbits(self):
        datum = DiscretePairDatum(2, (Block(1, 1, 1, 2, (1, 1)),))
        rows = pair_matrix(datum)
        assert rows[0][0] == -rows[0][1]
        assert rows[0][0] == rows[1][1]

    def test_zero_sums_random(self):
        rng = random.Random(4)
        for _ in range(30):
            rows = pair_matrix(random_datum(rng))
            n = len(rows)
            assert all(sum(row, Fraction(0)) == 0 for row in rows)
            assert all(sum(rows[i][j] for i in range(n)) == 0 for j in range(n))
            assert all(rows[i][j] == rows[j][i] for i in range(n) for j in range(n))

    def test_single_edge_closed_form(self):
        # one block, two orbits: one spanning tree with one edge
        g = 2
        datum = DiscretePairDatum(g, (Block(2, 1, 2, 2, (1, 1)),))
        y = 1 * 1 * ((2 * g - 2) * 4 * 1 + 2)
        assert pair_closed_form(datum) == y

    def test_triple_oracle(self):
        rng = random.Random(5)
        for _ in range(120):
            datum = random_datum(rng)
            tree, slope, closed = triple_oracle(datum)
            assert tree == slope == closed


class TestOrbitCharacterSum:
    def test_coprime_case(self):
        assert orbit_character_sum((1,), (1,)) == 1
        # gcd of the l_i fix_i equal to 1 always gives 1
        assert orbit_character_sum((2, 3), (1, 1)) == 1

    def test_single_two_cycle(self):
        assert orbit_character_sum_root((2,), (1,)) == 2
        assert orbit_character_sum_mobius((2,), (1,)) == 2

    def test_pair_of_two_cycles(self):
        assert orbit_character_sum((2, 2), (1, 1)) == 0

    def test_exhaustive_small(self):
        pairs = [(l, f) for l in range(1, 7) for f in range(1, 7)]
        for length in (1, 2, 3):
            for combo in itertools.combinations_with_replacement(pairs, length):
                ls = tuple(p[0] for p in combo)
                fs = tuple(p[1] for p in combo)
                orbit_character_sum(ls, fs)  # raises on mismatch


class TestChamberFamilies:
    def test_two_block_powers(self):
        cfuncs = {(0, 1): lambda x: x ** 3, (1, 0): lambda x: x ** 2}
        limit, basis = chamber_limit(2, cfuncs, derivs={(0, 1): 3, (1, 0): 2})
        assert basis == 5
        assert abs(limit - 5) < 1e-12

    def test_constant_family_vanishes(self):
        cfuncs = {(i, j): (lambda x: x * 0 + 1)
                  for i in range(3) for j in range(3) if i != j}
        limit, basis = chamber_limit(3, cfuncs, derivs={k: 0 for k in cfuncs})
        assert basis == 0
        assert abs(limit) < 1e-12

    def test_finite_difference_derivatives(self):
        cfuncs = {(0, 1): lambda x: x ** 2, (1, 0): lambda x: x ** -1}
        limit, basis = chamber_limit(2, cfuncs)
        assert abs(limit - 1) < 1e-6
        assert abs(basis - 1) < 1e-6

    def test_random_polynomials(self):
        rng = random.Random(6)

        def rand_func():
            cs = [Fraction(rng.randint(-2, 2)) for _ in range(rng.randint(1, 3))]

            def f(x, cs=cs):
                out = x * 0 + 1
                for k, c in enumerate(cs, start=1):
                    if c:
                        out = out + (x ** k - 1) * c.numerator / c.denominator
                return out

            return f, sum(k * c for k, c in enumerate(cs, start=1))

        for r in (2, 3, 4):
            cfuncs, derivs = {}, {}
            for i in range(r):
                for j in range(r):
                    if i != j:
                        cfuncs[(i, j)], derivs[(i, j)] = rand_func()
            limit, basis = chamber_limit(r, cfuncs, derivs=derivs)
            assert abs(limit - mpmath.mpf(basis.numerator) / basis.denominator) < 1e-6


class TestCircleCounts:
    @pytest.mark.parametrize("c12,c21,expected", [
        (RationalFunc([1, -2]), RationalFunc([1]), 1),
        (RationalFunc([1]), RationalFunc([1]), 0),
        (RationalFunc([1], [1, -3]), RationalFunc([1]), -1),
    ])
    def test_values(self, c12, c21, expected):
        value, count = circle_count_check(c12, c21)
        assert count == expected
        assert abs(value - expected) < 1e-6

    def test_root_on_circle_rejected(self):
        with pytest.raises(ValueError):
            circle_count_check(RationalFunc([2, -3, 1]), RationalFunc([1]))


LAM2 = (0.5, 2.0)


class TestConeSeries:
    def test_floor_vectors(self):
        assert degree_floor_vector((1, 1), (0, 1), -1) == ((1, 0), (1, 1))
        assert degree_floor_vector((1, 1), (0, 1), 0) == ((0, 0), (0, 1))
        h_tilde, _ = degree_floor_vector((2, 3), (1, 0), 5)
        assert sum(h_tilde) == -5 + 0  # floors telescope to -floor(e) = -e
        assert h_tilde == (2, 3) or sum(h_tilde) == -5

    def test_floor_telescope(self):
        rng = random.Random(7)
        for _ in range(40):
            r = rng.randint(1, 4)
            sizes = tuple(rng.randint(1, 3) for _ in range(r))
            order = list(range(r))
            rng.shuffle(order)
            e = rng.randint(-6, 6)
            h_tilde, h_full = degree_floor_vector(sizes, tuple(order), e)
            assert sum(h_tilde) == -e
            assert sum(h_full) == -e + r - 1

    def test_truncated_sum_converges(self):
        for order in ((0, 1), (1, 0)):
            ok, errors, tail = cone_series_check((1, 1), order, -1, LAM2)
            assert ok, (order, errors, tail)

    def test_three_blocks(self):
        lam = (0.3, 0.75, 1.9)
        for order in itertools.permutations(range(3)):
            ok, errors, tail = cone_series_check((1, 1, 1), order, 2, lam,
                                                 truncations=(8, 12, 16))
            assert ok, (order, errors, tail)

    def test_degree_one_collapse(self):
        for sizes in ((1, 1), (2, 1), (1, 1, 2)):
            r = len(sizes)
            lam = tuple(0.4 + 0.5 * i + 0.1j * i for i in range(r))
            for order in itertools.permutations(range(r)):
                assert cone_degree_one_identity(sizes, order, lam)

    def test_degree_one_floor_vector_all_shapes(self):
        # exact form of the collapse: at e = -1 the exponent vector is the
        # unit vector at the chamber-leading block, for every shape n <= 5
        def compositions(n):
            if n == 0:
                yield ()
                return
            for first in range(1, n + 1):
                for rest in compositions(n - first):
                    yield (first,) + rest

        for n in range(1, 6):
            for sizes in compositions(n):
                r = len(sizes)
                for order in itertools.permutations(range(r)):
                    h_tilde, h_full = degree_floor_vector(sizes, order, -1)
                    expected = tuple(1 if i == order[0] else 0 for i in range(r))
                    assert h_tilde == expected
                    assert h_full == tuple(1 for _ in range(r))

    def test_periodicity(self):
        rng = random.Random(8)
        for _ in range(30):
            r = rng.randint(1, 4)
            sizes = tuple(rng.randint(1, 3) for _ in range(r))
            order = list(range(r))
            rng.shuffle(order)
            assert cone_periodicity_check(sizes, tuple(order), rng.randint(-8, 8))

    def test_fourier_average(self):
        assert cone_fourier_average_check((1, 1), -1, LAM2)
        assert cone_fourier_average_check((2, 1), 2, LAM2)
        assert cone_fourier_average_check((1, 1, 1), 1, (0.4, 1.0, 2.5))


class TestPairWeight:
    def test_single_block(self):
        datum = DiscretePairDatum(2, (Block(1, 1, 1, 1, (1,)),))
        assert pair_weight(datum, 1) == 2  # binom(S,1) fix (-1) 1! with S = -2

    def test_xi_obstruction(self):
        # l = 4 divides n = 4 but xi = 4/gcd(4,1) = 4 does not divide m = 2
        datum = DiscretePairDatum(2, (Block(2, 1, 1, 2, (1, 1)),))
        assert pair_weight(datum, 4) == 0

    def test_l_must_divide_rank(self):
        datum = DiscretePairDatum(2, (Block(2, 1, 2, 3, (1, 1, 1)),))
        with pytest.raises(ValueError):
            pair_weight(datum, 4)

    def test_against_direct_formula(self):
        g = 2
        datum = DiscretePairDatum(g, (Block(2, 2, 1, 2, (2,)),))
        a = {2: 4}
        s_top = -Fraction((2 * g - 2) * 2 * (4 * 2), 1)
        expected = (s_top / 1) * (s_top - 1) / 2 * 1 * (-1) ** 2 * 2
        assert pair_weight(datum, 1) == expected


def cycle_type(perm):
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


class TestWeylSumRegrouping:
    """Brute force over the permutations of the identical block copies: the
    signed, fix-weighted sum of the closed form over cycle profiles must
    collapse to the binomial bracket divided by the global prefactor."""

    def check(self, g, template, l):
        # template: list of (d, nu, fix, m)
        n = sum(d * nu * m for d, nu, fix, m in template)
        assert n % l == 0
        lhs = Fraction(0)
        ranges = [list(itertools.permutations(range(m))) for _, _, _, m in template]
        for choice in itertools.product(*ranges):
            profiles = [cycle_type(p) for p in choice]
            admissible = True
            sign = 1
            fixpow = 1
            size = 1
            for (d, nu, fix, m), profile in zip(template, profiles):
                xi = l // math.gcd(l, fix)
                for length in profile:
                    if (length * fix) % l:
                        admissible = False
                        break
                    sign *= (-1) ** (length // xi - 1)
                    fixpow *= fix ** (length - 1)
                    size *= length
                if not admissible:
                    break
            if not admissible:
                continue
            blocks = tuple(
                Block(d, nu, fix, m, profile)
                for (d, nu, fix, m), profile in zip(template, profiles)
            )
            datum = DiscretePairDatum(g, blocks)
            lhs += Fraction(sign, size) * fixpow * pair_closed_form(datum)
        probe = DiscretePairDatum(
            g, tuple(Block(d, nu, fix, m, (m,)) for d, nu, fix, m in template)
        )
        a_total = sum(probe.a_table().values())
        rhs = pair_weight(probe, l) / ((2 * g - 2) * n * a_total)
        assert lhs == rhs, (template, l, lhs, rhs)

    def test_single_copy(self):
        self.check(2, [(1, 1, 1, 1)], 1)

    def test_single_block_multiplicities(self):
        for m in (2, 3, 4):
            self.check(2, [(1, 1, 1, m)], 1)
            self.check(3, [(2, 1, 2, m)], 1)

    def test_twisted_degrees(self):
        # l > 1 activates the divisibility constraint on cycle lengths
        self.check(2, [(1, 1, 1, 2)], 2)
        self.check(2, [(2, 1, 2, 2)], 2)
        self.check(2, [(2, 1, 2, 3)], 2)
        self.check(2, [(1, 2, 1, 3)], 3)

    def test_several_blocks(self):
        self.check(2, [(1, 1, 1, 2), (1, 2, 1, 2)], 1)
        self.check(3, [(2, 1, 2, 2), (1, 1, 1, 3)], 1)
        self.check(2, [(1, 1, 1, 2), (1, 3, 1, 2)], 2)

    def test_obstructed_profile_gives_zero(self):
        # xi does not divide m: no admissible permutation and a zero bracket
        g, template, l = 2, [(2, 1, 1, 2)], 4
        probe = DiscretePairDatum(g, (Block(2, 1, 1, 2, (2,)),))
        assert pair_weight(probe, l) == 0
        self.check(g, template, l)


class TestCuspidalEnumeration:
    """With integer tables the inertial classes can be enumerated outright:
    choose the distinct factors and their multiplicities, divide by the
    stabilizer, and the weighted total must agree with the generating-series
    coefficient used by the splitting sum."""

    @staticmethod
    def bracket(top, m, xi, d):
        from locsys.combinat import binom_ring
        if m % xi:
            return Fraction(0)
        return binom_ring(top, m // xi) * Fraction(d) ** m * (-1) ** (m // xi) \
            * math.factorial(m)

    def enumerate_total(self, a, l, s, g, dtable):
        from locsys.combinat import binom_ring, multinomial, partitions

        symbols = sorted(dtable)
        totals = Fraction(0)

        def rec(idx, remaining, acc):
            nonlocal totals
            if idx == len(symbols):
                if remaining == 0:
                    totals += acc
                return
            j, d = symbols[idx]
            count = dtable[(j, d)]
            xi = l // math.gcd(l, d)
            top = -Fraction((2 * g - 2) * j, xi * d) * s

            options = [(0, Fraction(1))]
            budget = remaining // j
            for total_mult in range(1, budget + 1):
                for lam in partitions(total_mult):
                    distinct = lam.num_parts()
                    if distinct > count:
                        continue
                    ways = binom_ring(Fraction(count), distinct) * multinomial(
                        list(lam.mult.values())
                    )
                    weight = Fraction(1)
                    for mult, b in lam.mult.items():
                        per = self.bracket(top, mult, xi, d) / (
                            Fraction(d) ** mult * math.factorial(mult)
                        )
                        weight *= per ** b
                    options.append((total_mult * j, ways * weight))
            for used, weight in options:
                if used <= remaining:
                    rec(idx + 1, remaining - used, acc * weight)

        rec(0, a, Fraction(1))
        return totals

    def series_coefficient(self, a, l, s, g, dtable):
        from locsys.combinat import binom_ring

        coeffs = [Fraction(0)] * (a + 1)
        coeffs[0] = Fraction(1)
        for (j, d), count in sorted(dtable.items()):
            xi = l // math.gcd(l, d)
            top = -Fraction((2 * g - 2) * j, xi * d) * s
            step = j * xi
            factor = [Fraction(0)] * (a + 1)
            i = 0
            while i * step <= a:
                factor[i * step] = (-1) ** i * binom_ring(top * count, i)
                i += 1
            new = [Fraction(0)] * (a + 1)
            for u in range(a + 1):
                if coeffs[u]:
                    for v in range(a + 1 - u):
                        if factor[v]:
                            new[u + v] += coeffs[u] * factor[v]
            coeffs = new
        return coeffs[a]

    def test_small_tables(self):
        rng = random.Random(17)
        for _ in range(25):
            a = rng.randint(1, 4)
            l = rng.choice([1, 2])
            g = rng.choice([2, 3])
            s = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            dtable = {}
            for j in range(1, a + 1):
                for d in range(1, j + 1):
                    if j % d == 0:
                        dtable[(j, d)] = rng.randint(0, 3)
            got = self.enumerate_total(a, l, s, g, dtable)
            want = self.series_coefficient(a, l, s, g, dtable)
            assert got == want, (a, l, s, g, dtable, got, want)


class TestAggregation:
    def test_single_coefficient(self):
        assert aggregation_check(1, 1, Fraction(3, 2), 2, {(1, 1): Fraction(5)})

    def test_random_tables(self):
        rng = random.Random(9)
        for _ in range(60):
            a = rng.randint(1, 4)
            l = rng.choice([1, 2])
            g = rng.choice([2, 3])
            dtable = {}
            for j in range(1, a + 1):
                for d in range(1, j + 1):
                    if j % d == 0:
                        dtable[(j, d)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            s = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            assert aggregation_check(a, l, s, g, dtable)
