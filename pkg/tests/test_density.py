from __future__ import annotations

from fractions import Fraction

import pytest

from kparts import density as dn, oracle
from kparts.errors import DomainError, WindowTooSmall


class TestModSequence:
    def test_matches_exact_table(self):
        table = oracle.p_table(400, 5)
        for k in (1, 2, 3, 5):
            for m in (2, 3, 5, 7):
                seq = dn.mod_sequence(k, m, 400, "p")
                assert all(seq[n] == table.p(n, k) % m for n in range(401))

    def test_q_shift(self):
        table = oracle.p_table(400, 4)
        seq = dn.mod_sequence(4, 3, 400, "q")
        assert all(seq[n] == oracle.q_of(n, 4, table) % 3 for n in range(401))

    def test_recurrence_coefficients(self):
        # (1-z)(1-z^2) = 1 - z - z^2 + z^3
        assert dn.recurrence_coeffs(2) == (1, -1, -1, 1)
        assert dn.recurrence_coeffs(1) == (1, -1)
        coeffs = dn.recurrence_coeffs(6)
        assert len(coeffs) == 22 and abs(coeffs[-1]) == 1

    def test_sequence_satisfies_recurrence(self):
        for k in (2, 3, 4):
            seq = dn.mod_sequence(k, 5, 600, "p")
            assert dn._check_recurrence(seq, k, 5, k + 1, 600)


class TestResidueDensity:
    def test_constant_sequence(self):
        rep = dn.residue_density(1, 2, 1, "p", 1000)
        assert rep.certified and rep.density == 1 and rep.period == 1

    def test_k2_mod2_pinned(self):
        rep = dn.residue_density(2, 2, 1, "p", 10_000)
        assert rep.certified and rep.density == Fraction(1, 2)

    def test_k3_mod2_exact(self):
        rep = dn.residue_density(3, 2, 1, "p", 10_000)
        assert rep.certified and rep.period == 12
        assert rep.density == Fraction(5, 12)
        assert rep.density <= Fraction(2, 3)

    def test_certified_grid_sums_to_one(self):
        for k in range(1, 7):
            for m in (2, 3, 5):
                reports = [dn.residue_density(k, m, i, "p", 50_000) for i in range(m)]
                assert all(r.certified for r in reports)
                assert sum(r.density for r in reports) == 1

    def test_doubling_invariance(self):
        for k in (2, 3, 4):
            a = dn.residue_density(k, 3, 1, "p", 20_000)
            b = dn.residue_density(k, 3, 1, "p", 40_000)
            assert a.certified and b.certified
            assert a.density == b.density and a.period == b.period

    def test_q_has_same_density(self):
        for k in (2, 3, 4):
            for i in (0, 1):
                p_rep = dn.residue_density(k, 2, i, "p", 30_000)
                q_rep = dn.residue_density(k, 2, i, "q", 30_000)
                assert p_rep.density == q_rep.density

    def test_window_too_small(self):
        with pytest.raises(WindowTooSmall):
            dn.residue_density(5, 5, 0, "p", 200)

    def test_bad_residue(self):
        with pytest.raises(DomainError):
            dn.residue_density(2, 3, 3, "p", 1000)


class TestBoundAndSurvey:
    def test_trivial_k1(self):
        dens, bound, holds = dn.check_bound_nonzero(1, 7, "p", 1000)
        assert dens == 1 and bound == 1 and holds

    def test_k2_mod2(self):
        dens, bound, holds = dn.check_bound_nonzero(2, 2, "p", 10_000)
        assert dens == Fraction(1, 2) and bound == Fraction(1, 3) and holds

    def test_k4_mod3(self):
        dens, bound, holds = dn.check_bound_nonzero(4, 3, "p", 50_000)
        assert bound == Fraction(1, 10) and holds

    def test_bound_grid(self):
        for which in ("p", "q"):
            for k in range(1, 7):
                for m in (2, 3, 5):
                    dens, bound, holds = dn.check_bound_nonzero(k, m, which, 50_000)
                    assert holds, (k, m, which, dens, bound)

    def test_survey_shape(self):
        reports = dn.density_survey(2, {2}, "p", 10_000)
        assert len(reports) == 4
        assert all(r.certified for r in reports)
        assert [(r.k, r.m, r.i) for r in reports] == [(1, 2, 0), (1, 2, 1),
                                                      (2, 2, 0), (2, 2, 1)]

    def test_survey_q_k1(self):
        reports = dn.density_survey(1, {2}, "q", 1000)
        by_i = {r.i: r.density for r in reports}
        assert by_i == {0: 0, 1: 1}

    def test_odd_density_pattern(self):
        flags = dn.odd_density_flags(6, "p", 50_000)
        # the bound may fail at some k (it does at k = 1) but then holds at k+1
        assert all(flags[i][2] or flags[i + 1][2] for i in range(len(flags) - 1))
