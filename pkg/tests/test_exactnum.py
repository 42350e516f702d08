from __future__ import annotations

import math
from fractions import Fraction

import pytest

from kparts import exactnum as ex
from kparts._polys import poly_mul
from kparts.errors import Irrational


class TestBernoulliNumbers:
    def test_first_values(self):
        assert ex.bernoulli_numbers(2) == [1, Fraction(-1, 2), Fraction(1, 6)]
        assert ex.bernoulli_number(3) == 0
        assert ex.bernoulli_number(4) == Fraction(-1, 30)

    def test_recurrence_holds_exactly(self):
        bern = ex.bernoulli_numbers(30)
        for ell in range(1, 31):
            assert sum(math.comb(ell + 1, i) * bern[i] for i in range(ell + 1)) == 0

    def test_odd_indices_vanish(self):
        for n in range(3, 31, 2):
            assert ex.bernoulli_number(n) == 0


class TestBernoulliPoly:
    def test_degree_zero_is_one(self):
        for x in (Fraction(0), Fraction(7, 3), Fraction(-2)):
            assert ex.bernoulli_poly_eval(0, x) == 1

    def test_examples(self):
        assert ex.bernoulli_poly_eval(1, Fraction(1, 2)) == 0
        assert ex.bernoulli_poly_eval(2, Fraction(1)) == Fraction(1, 6)

    def test_values_at_endpoints(self):
        # B_n(0) = B_n and B_n(1) = (-1)^n B_n
        for n in range(31):
            bn = ex.bernoulli_number(n)
            assert ex.bernoulli_poly_eval(n, Fraction(0)) == bn
            assert ex.bernoulli_poly_eval(n, Fraction(1)) == (-1) ** n * bn


class TestBernoulliBarnes:
    def test_index_zero(self):
        assert ex.bernoulli_barnes(0, (1,)) == 1
        assert ex.bernoulli_barnes(0, (3, 5, 7)) == 1

    def test_small_examples(self):
        assert ex.bernoulli_barnes(1, (1,)) == Fraction(-1, 2)
        assert ex.bernoulli_barnes(1, (1, 2)) == Fraction(-3, 2)

    def test_single_part_reduces_to_bernoulli(self):
        for j in range(21):
            assert ex.bernoulli_barnes(j, (1,)) == ex.bernoulli_number(j)

    def test_matches_direct_composition_sum(self):
        # independent route: enumerate compositions and multiply out
        bern = ex.bernoulli_numbers(10)
        for a in ((1, 2), (2, 3, 4), (1, 1, 5)):
            for j in range(9):
                direct = Fraction(0)
                for comp in ex.compositions(j, len(a)):
                    term = Fraction(math.factorial(j))
                    for i, ai in zip(comp, a):
                        term *= bern[i] * ai ** i / math.factorial(i)
                    direct += term
                assert ex.bernoulli_barnes(j, a) == direct


class TestStirling:
    def test_cubic_expansion(self):
        # x(x+1)(x+2) = x^3 + 3x^2 + 2x
        assert ex.stirling_unsigned(3, 3) == 1
        assert ex.stirling_unsigned(3, 2) == 3
        assert ex.stirling_unsigned(3, 1) == 2

    def test_out_of_range_is_zero(self):
        assert ex.stirling_unsigned(3, 4) == 0
        assert ex.stirling_unsigned(3, -1) == 0

    def test_rising_factorial_coefficients(self):
        for n in range(11):
            rising = [Fraction(1)]
            for i in range(n):
                rising = poly_mul(rising, [Fraction(i), Fraction(1)])
            expected = [int(c) for c in rising] + [0] * (n + 1 - len(rising))
            got = [ex.stirling_unsigned(n, k) for k in range(n + 1)]
            assert got == expected[: n + 1]


def test_lcm_upto():
    assert ex.lcm_upto(1) == 1
    assert ex.lcm_upto(3) == 6
    assert ex.lcm_upto(6) == 60


class TestCyclotomic:
    def test_low_order_polynomials(self):
        assert ex.cyclotomic_poly(1) == (-1, 1)
        assert ex.cyclotomic_poly(2) == (1, 1)
        assert ex.cyclotomic_poly(4) == (1, 0, 1)
        assert ex.cyclotomic_poly(6) == (1, -1, 1)

    def test_root_powers(self):
        assert ex.cyclo_root_power(2, 1) == -1
        assert ex.cyclo_root_power(3, 3) == 1
        # order 4: the class of the basis monomial x
        assert ex.cyclo_root_power(4, 1).coeffs == (0, 1)

    def test_extract_rational(self):
        two = ex.cyclo_root_power(2, 1) + ex.cyclo_root_power(2, 1)
        assert ex.cyclo_extract_rational(two) == -2
        s = ex.cyclo_root_power(3, 1) + ex.cyclo_root_power(3, 2) + 1
        assert ex.cyclo_extract_rational(s) == 0
        with pytest.raises(Irrational):
            ex.cyclo_extract_rational(ex.cyclo_root_power(4, 1))

    def test_repeated_multiplication_orders(self):
        for j in range(1, 13):
            for e in (1, 2, j - 1, j + 3):
                root = ex.cyclo_root_power(j, e)
                acc = ex.cyclo_rational(j, 1)
                for _ in range(j):
                    acc = acc * root
                assert acc == 1

    def test_geometric_sums_vanish(self):
        for j in range(2, 13):
            total = ex.cyclo_rational(j, 0)
            for e in range(j):
                total = total + ex.cyclo_root_power(j, e)
            assert total == 0

    def test_mixed_orders_rejected(self):
        with pytest.raises(ValueError):
            ex.cyclo_root_power(3, 1) + ex.cyclo_root_power(4, 1)
