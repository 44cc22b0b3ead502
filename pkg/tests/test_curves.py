import random
from fractions import Fraction

import pytest

from logblocks.curves import (NODAL, P1, CurveModel, GlobalLogForm, Puncture,
                              global_form_basis, nodal_pair, projective_line,
                              restrict_to_disc)
from logblocks.logmonoid import nodal_charts
from logblocks.series import residue


def nodal_ring():
    return nodal_charts()[0].target_ring


class TestModels:
    def test_nodal_pair_punctures(self):
        c = nodal_pair()
        assert c.kind == NODAL
        assert [p.location for p in c.punctures] == ["inf1", "inf2"]

    def test_projective_line_variants(self):
        assert [p.location for p in projective_line(1).punctures] == \
            ["infinity"]
        assert [p.location for p in projective_line(2).punctures] == \
            ["infinity", "zero"]
        with pytest.raises(ValueError):
            projective_line(3)

    def test_punctures_validated(self):
        with pytest.raises(ValueError):
            CurveModel(P1, (Puncture("a", "inf1"),))
        with pytest.raises(ValueError):
            CurveModel(NODAL, (Puncture("a", "inf1"),
                               Puncture("b", "inf1")))
        with pytest.raises(ValueError):
            Puncture("a", "elsewhere")


class TestFormBasis:
    def test_nodal_basis_shape(self):
        forms = global_form_basis(nodal_pair(), max_pole=0, max_deg=3)
        # x^0..x^3 dx/x plus y^1..y^3 dy/y; dy/y itself is -dx/x
        assert len(forms) == 7
        labels = [f.label() for f in forms]
        assert any("dx/x" in lb for lb in labels)
        assert any("dy/y" in lb for lb in labels)

    def test_p1_one_puncture_window(self):
        forms = global_form_basis(projective_line(1), max_pole=3, max_deg=2)
        # regular at zero, pole only at infinity: u^0 du .. u^2 du
        assert sorted(k for f in forms for k in f.laurent) == [0, 1, 2]

    def test_p1_two_puncture_window(self):
        forms = global_form_basis(projective_line(2), max_pole=2, max_deg=1)
        assert sorted(k for f in forms for k in f.laurent) == [-2, -1, 0, 1]


class TestRestriction:
    def test_dlog_x_restrictions(self):
        # dx/x restricts to -dt/t at inf1 and +dt/t at inf2
        ring = nodal_ring()
        omega = GlobalLogForm(NODAL, f=ring.one(), g=ring.zero())
        r1 = restrict_to_disc(omega, nodal_pair().punctures[0], 8)
        r2 = restrict_to_disc(omega, nodal_pair().punctures[1], 8)
        assert r1.in_dt_over_t().series.coefficients == {0: Fraction(-1)}
        assert r2.in_dt_over_t().series.coefficients == {0: Fraction(1)}

    def test_monomial_form_at_inf1(self):
        # x^i dx/x -> -t^{-i} dt/t, nonzero only on the first branch
        ring = nodal_ring()
        omega = GlobalLogForm(NODAL, f=ring.monomial((2, 0)), g=ring.zero())
        r1 = restrict_to_disc(omega, nodal_pair().punctures[0], 8)
        r2 = restrict_to_disc(omega, nodal_pair().punctures[1], 8)
        assert r1.in_dt_over_t().series.coefficients == {-2: Fraction(-1)}
        assert r2.is_zero()

    def test_difference_expansion_random(self):
        # (f dx/x + g dy/y)|_{inf1} = -(f - g)(t^-1, 0) dt/t
        ring = nodal_ring()
        rnd = random.Random(7)
        inf1 = nodal_pair().punctures[0]
        for _ in range(20):
            fc = {(i, 0): Fraction(rnd.randint(-4, 4)) for i in range(4)}
            gc = {(0, j): Fraction(rnd.randint(-4, 4)) for j in range(4)}
            omega = GlobalLogForm(NODAL, f=ring.element(fc),
                                  g=ring.element(gc))
            got = restrict_to_disc(omega, inf1, 8).in_dt_over_t()
            want = {-i: -(fc.get((i, 0), Fraction(0))
                          - gc.get((i, 0), Fraction(0)))
                    for i in range(4)}
            want = {e: c for e, c in want.items() if c != 0}
            assert got.series.coefficients == want

    def test_p1_restriction_at_zero_is_plain(self):
        omega = GlobalLogForm(P1, laurent={-2: 1, 1: 3})
        r = restrict_to_disc(omega, projective_line(2).punctures[1], 8)
        assert r.series.coefficients == {-2: Fraction(1), 1: Fraction(3)}

    def test_p1_restriction_at_infinity_inverts(self):
        # u^k du -> -t^{-k-2} dt under u = 1/t
        omega = GlobalLogForm(P1, laurent={1: 1})
        r = restrict_to_disc(omega, projective_line(1).punctures[0], 8)
        assert r.in_dt().series.coefficients == {-3: Fraction(-1)}

    def test_residue_theorem_on_p1(self):
        # sum of residues over both punctures vanishes for every basis form
        curve = projective_line(2)
        for omega in global_form_basis(curve, max_pole=3, max_deg=3):
            total = sum(residue(restrict_to_disc(omega, p, 10))
                        for p in curve.punctures)
            assert total == 0

    def test_residue_theorem_on_nodal_curve(self):
        curve = nodal_pair()
        for omega in global_form_basis(curve, max_pole=0, max_deg=3):
            total = sum(residue(restrict_to_disc(omega, p, 10))
                        for p in curve.punctures)
            assert total == 0

    def test_curve_mismatch_rejected(self):
        ring = nodal_ring()
        omega = GlobalLogForm(NODAL, f=ring.one(), g=ring.zero())
        with pytest.raises(ValueError):
            restrict_to_disc(omega, projective_line(1).punctures[0], 8)
