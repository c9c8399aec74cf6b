from fractions import Fraction

import pytest

from paramodular.forms import catalog
from paramodular.hecke import t_minus_weight0
from paramodular.lift import SiegelExpansion, closed_form, exp_lift, lift_arith
from paramodular.qseries import ExactDivisionError
from paramodular.siegel import (SIGMA_T9, SIGMA_T36, check_sign_under,
                                hecke_product_T2, involution_V, ms_p,
                                restrict_z, siegel_div, siegel_mul, siegel_pow)

B = 144


def test_siegel_mul_and_self_division():
    d1 = closed_form("delta1", B, B)
    sq = siegel_mul(d1, d1)
    assert sq.weight == 2
    assert sq.series.leading()[0] == (8, -2, 24)
    one = siegel_div(d1, d1)
    assert dict(one.series.terms()) == {(0, 0, 0): 1}
    back = siegel_div(sq, d1)
    assert back.series.first_mismatch(d1.series) is None


def test_siegel_div_remainder_raises():
    d1 = closed_form("delta1", B, B)
    d2 = closed_form("delta2", B, B)
    corrupt = d2.series + d2.series.monomial(3, d2.series.denoms, (30, 3, 36), 1)
    bad = SiegelExpansion(corrupt, 2, 2, d2.char, "x")
    with pytest.raises(ExactDivisionError):
        siegel_div(SiegelExpansion(d1.series, 2, 1, d1.char, "x"), bad)


def test_ms2_delta1_equals_exp_of_tminus_image():
    d1 = closed_form("delta1", 200, 200)
    left = ms_p(d1, 2, cap=(B, B))
    assert left.weight == 3 and left.level == 6
    phi = t_minus_weight0(catalog("phi_0_3", 24 * 80), 2)
    right = exp_lift(phi, B, B)
    assert left.series.restricted((B, B)).first_mismatch(right.series) is None


def test_ms3_delta1_equals_exp_of_tminus_image():
    d1 = closed_form("delta1", 220, 300)
    left = ms_p(d1, 3, cap=(B, B))
    phi = t_minus_weight0(catalog("phi_0_3", 24 * 90), 3)
    right = exp_lift(phi, B, B)
    assert left.series.restricted((B, B)).first_mismatch(right.series) is None
    assert left.series.is_rational()


def test_ms2_delta2_is_theta_constant_pair():
    d2f = closed_form("delta2", 200, 400)
    left = ms_p(d2f, 2, cap=(B, B)).series.restricted((B, B))
    d5_4 = closed_form("delta5", B, 60).series.substitute_linear(
        ((Fraction(1), 0, 0), (0, Fraction(2), 0), (0, 0, Fraction(4))))
    dh2 = closed_form("delta_half", B, B).series.pow(2)
    right = d5_4.mul(dh2, cap=(B, B))
    assert left.first_mismatch(right) is None


def test_ms2_delta5_over_delta2_squared_is_delta11():
    d5 = closed_form("delta5", 240, 240)
    ms5 = ms_p(d5, 2, cap=(170, 180))
    d2sq = siegel_pow(closed_form("delta2", 200, 200), 2)
    quot = siegel_div(SiegelExpansion(ms5.series, 2, 10, ms5.char, "x"), d2sq)
    d11 = lift_arith("eta21_theta2z", 1, B, B)
    assert quot.series.first_mismatch(d11.series) is None


def test_ms_weight_bookkeeping():
    d1 = closed_form("delta1", 96, 96)
    out = ms_p(d1, 2, cap=(48, 48))
    assert out.weight == d1.weight * 3
    out3 = ms_p(d1, 3, cap=(24, 24))
    assert out3.weight == d1.weight * 4


def test_hecke_product_T2_route_for_delta35():
    d5 = closed_form("delta5", 240, 240)
    hp = hecke_product_T2(d5, 240, 240)
    assert hp.series.is_rational()
    d58 = siegel_pow(closed_form("delta5", 160, 160), 8)
    quot = siegel_div(SiegelExpansion(hp.series, 1, 75, hp.char, "x"), d58)
    d35 = exp_lift(catalog("phi_0_1_t02m2", 24 * 78), B, B)
    assert quot.series.first_mismatch(d35.series) is None
    assert quot.series.get((72, 2, 48)) == 1
    assert quot.series.get((48, 2, 72)) == -1


def test_hecke_product_constant_form():
    from paramodular.qseries import Series
    one = SiegelExpansion(
        Series(3, (24, 2, 24), {(0, 0, 0): 1}, (96, None, 96), (0, 0, 0)),
        1, 0, closed_form("delta5", 48, 48).char.scaled(0), "x")
    out = hecke_product_T2(one, 48, 48)
    assert dict(out.series.terms()) == {(0, 0, 0): 1}


def test_involution_V_fixes_arith_lifts():
    for name, tq in (("delta1", 3), ("delta2", 2), ("delta5", 1)):
        F = closed_form(name, B, B)
        assert involution_V(F, tq).series.first_mismatch(F.series) is None


def test_involution_V_negates_antisymmetric_lift():
    from paramodular.lift import lift_exp
    P = lift_exp("psi_0_2", B, B)
    iv = involution_V(P, 2)
    assert iv.series.first_mismatch(P.series.scale(-1)) is None


def test_restrictions_vanish_on_humbert_slices():
    for name, alpha in (("delta1", 0), ("delta2", 0), ("delta5", 0),
                        ("delta_half", 0), ("d_half", Fraction(1, 2))):
        F = closed_form(name, B, B)
        r = restrict_z(F, alpha)
        assert not r.coeffs, name


def test_restriction_is_nonzero_elsewhere():
    F = closed_form("delta5", B, B)
    r = restrict_z(F, Fraction(1, 2))
    assert r.coeffs


def test_sigma_reflections_negate_singular_forms():
    d2 = closed_form("d2", 24 * 10, 24 * 48)
    assert check_sign_under(d2, SIGMA_T9, -1)
    dh = closed_form("d_half", 24 * 10, 24 * 180)
    assert check_sign_under(dh, SIGMA_T36, -1)


def test_sigma_matrices_are_involutions():
    import itertools
    for M in (SIGMA_T9, SIGMA_T36):
        sq = [[sum(M[i][k] * M[k][j] for k in range(3)) for j in range(3)]
              for i in range(3)]
        assert sq == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
