from __future__ import annotations

from fractions import Fraction

import pytest

from kparts import oracle, quasipoly, waves as wv
from kparts.closedform import f_histogram
from kparts.errors import DomainError
from kparts.serialize import waves_doc


@pytest.fixture(scope="module")
def table():
    return oracle.p_table(300, 6)


class TestFourierConstruction:
    def test_k1_single_constant_wave(self):
        wd = wv.waves_from_constituents(1)
        assert set(wd.polys) == {1}
        assert wd.polys[1] == ((Fraction(1),),)

    def test_k2_split(self):
        # floor(n/2) + 1 = (n/2 + 3/4) + (1/4)(-1)^n
        wd = wv.waves_from_constituents(2)
        assert wd.polys[1][0] == (Fraction(3, 4), Fraction(1, 2))
        assert wd.polys[2][0] == (Fraction(1, 4), Fraction(0))
        assert wd.polys[2][1] == (Fraction(-1, 4), Fraction(0))

    def test_k3_total_at_five(self):
        assert wv.waves_from_constituents(3).total(5) == 5  # p(8, 3)

    def test_reconstruction_grid(self, table):
        for k in range(1, 7):
            wd = wv.waves_from_constituents(k)
            for n in range(k, 301):
                assert wd.total(n - k) == table.p(n, k), (n, k)

    def test_wave_sums(self, table):
        assert wv.wave_sum_p(8, 3) == 5
        assert wv.wave_sum_q(8, 3) == 2
        for n in range(6, 80):
            assert wv.wave_sum_q(n, 3) == oracle.q_of(n, 3, table)

    def test_first_wave_is_constituent_average(self):
        for k in range(1, 7):
            qp = quasipoly.interp_constituents(k)
            D = qp.period
            avg = tuple(sum(qp.coeffs[m][v] for v in range(D)) / D for m in range(k))
            w1 = wv.waves_from_constituents(k).polys[1][0]
            assert w1 == avg


class TestWindowSums:
    def test_zero_exponent_totals(self):
        for k in range(1, 7):
            sums = wv.window_sums(k)
            total = f_histogram(k).total()
            for j in range(1, k + 1):
                assert sum(sums.sums[j][r][0] for r in range(j)) == total


class TestClosedForm:
    def test_k1_trivial(self):
        for n in range(1, 12):
            assert wv.wave_closed_form(1, n, 1) == 1

    def test_matches_fourier_waves(self):
        for k in range(1, 7):
            wd = wv.waves_from_constituents(k)
            sums = wv.window_sums(k)
            for j in range(1, k + 1):
                for x in range(0, 2 * wd.period, 3):
                    got = wv.wave_closed_form(j, x + k, k, sums, "p")
                    assert got == wd.wave_value(j, x), (j, x, k)

    def test_q_variant(self, table):
        for k in (2, 3):
            shift = oracle.staircase(k)
            sums = wv.window_sums(k)
            for n in range(k + shift, k + shift + 40):
                total = sum(wv.wave_closed_form(j, n, k, sums, "q")
                            for j in range(1, k + 1))
                assert total == oracle.q_of(n, k, table)

    def test_convention_unique_for_k_at_least_3(self):
        for k in (3, 4, 5, 6):
            res = wv.resolve_wave_convention(k)
            assert res.matching == ("primitive-twist",)
            assert not res.printed_ok

    def test_low_k_ties_are_value_identical(self):
        res = wv.resolve_wave_convention(2)
        assert res.chosen == "primitive-twist"
        assert set(res.matching) == {"class-shift", "primitive-twist"}

    def test_printed_form_rejected_with_diagnostic(self):
        res = wv.resolve_wave_convention(2)
        assert any(d.startswith("printed:") for d in res.diagnostics)

    def test_domain(self):
        with pytest.raises(DomainError):
            wv.wave_closed_form(3, 10, 2)
        with pytest.raises(DomainError):
            wv.wave_closed_form(1, 1, 2)


class TestPolyParts:
    def test_k1_constant(self):
        for n in (1, 5, 9):
            assert wv.poly_part_P(n, 1, "bernoulli") == 1
            assert wv.poly_part_Q(n, 1, "bernoulli") == 1

    def test_k2_closed_form(self):
        for n in range(2, 12):
            expected = Fraction(n - 2, 2) + Fraction(3, 4)
            assert wv.poly_part_P(n, 2, "bernoulli") == expected
            assert wv.poly_part_P(n, 2, "tuple-average") == expected

    def test_variants_agree_at_k_plus_one_points(self):
        for k in range(1, 7):
            for n in range(k, 2 * k + 2):
                assert (wv.poly_part_P(n, k, "tuple-average")
                        == wv.poly_part_P(n, k, "bernoulli"))
                shift = oracle.staircase(k)
                assert (wv.poly_part_Q(n + shift, k, "tuple-average")
                        == wv.poly_part_Q(n + shift, k, "bernoulli"))

    def test_equals_first_wave_value(self):
        wd = wv.waves_from_constituents(3)
        assert wv.poly_part_P(8, 3) == wd.wave_value(1, 5)

    def test_q_is_shifted_p(self):
        assert wv.poly_part_Q(9, 3) == wv.poly_part_P(6, 3)
        for k in range(1, 7):
            shift = oracle.staircase(k)
            for n in range(k + shift, k + shift + 8):
                assert wv.poly_part_Q(n, k) == wv.poly_part_P(n - shift, k)

    def test_first_wave_equality_as_q_polynomial(self):
        # the order-1 wave of the shifted sequence is the q polynomial part
        for k in range(1, 7):
            wd = wv.waves_from_constituents(k)
            shift = oracle.staircase(k)
            for n in range(k + shift, k + shift + k + 1):
                assert wv.poly_part_Q(n, k) == wd.wave_value(1, n - k - shift)

    def test_domain(self):
        with pytest.raises(DomainError):
            wv.poly_part_P(2, 3)
        with pytest.raises(DomainError):
            wv.poly_part_Q(5, 3)
        with pytest.raises(DomainError):
            wv.poly_part_P(8, 3, "fancy")


class TestGoldens:
    def test_wave_tables(self, golden):
        for k in range(1, 5):
            golden(f"waves_k{k}.json", waves_doc(k, wv.waves_from_constituents(k)))
