import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from weylheat.ball import (
    ball_heat_transform,
    ball_weyl_coefficients,
    ball_weyl_via_logderivative,
    even_d_asymptotic_cn,
    even_d_prediction,
    hyp3f2_terminating,
    hypergeometric_side,
    pochhammer_sum_side,
    ratio_to_prediction,
)
from weylheat.errors import DomainError

F = Fraction

FROZEN = {
    2: [1, -2, 1, F(1, 4), F(1, 4), F(25, 64), F(13, 16), F(1073, 512), F(103, 16)],
    4: [1, -4, 6, F(-3, 2), F(-3, 2), F(-63, 32), F(-27, 8), F(-1899, 256), F(-81, 4)],
    6: [1, -6, 15, F(-45, 4), F(-45, 4), F(-405, 64), F(135, 16), F(22275, 512), F(2025, 16)],
}


@pytest.mark.parametrize("d", sorted(FROZEN))
def test_frozen_even_tables(d):
    assert ball_weyl_coefficients(d, 10).values() == FROZEN[d]


def test_odd_tables_terminate():
    assert ball_weyl_coefficients(1, 12).values() == [1, -1] + [0] * 9
    assert ball_weyl_coefficients(3, 12).values() == [1, -3, 3] + [0] * 8
    assert ball_weyl_coefficients(5, 12).values() == [1, -5, 10] + [-5] * 8


@given(st.integers(min_value=1, max_value=40))
@settings(max_examples=25, deadline=None)
def test_leading_coefficients_in_d(d):
    t = ball_weyl_coefficients(d, 4)
    assert t[2] == 1
    assert t[3] == -d
    assert t[4] == F(d * (d - 1), 2)


@pytest.mark.parametrize("d", [2, 4, 6, 8, 12])
def test_two_routes_agree(d):
    assert ball_weyl_coefficients(d, 60).values() == ball_weyl_via_logderivative(d, 60).values()


def test_table_access_and_serialisation():
    t = ball_weyl_coefficients(2, 10)
    assert t.max_n == 10
    with pytest.raises(KeyError):
        t[11]
    with pytest.raises(KeyError):
        t[1]
    rows = t.rows(dimension=2)
    assert rows[0][:3] == ["2", "1", "1.0"] and rows[0][3] == ""
    assert float(rows[3][4]) == pytest.approx(ratio_to_prediction(t[5], 2, 5))
    assert t.to_dict()["entries"][3] == {"n": 5, "c_hat": "1/4"}


def test_ratio_at_n80_frozen():
    t = ball_weyl_coefficients(2, 80)
    assert ratio_to_prediction(t[80], 2, 80) == pytest.approx(0.9999317430930097, rel=1e-13)


@pytest.mark.parametrize("d", [2, 4, 6])
def test_ratio_error_shrinks_like_inverse_square(d):
    t = ball_weyl_coefficients(d, 160)
    errs = [abs(ratio_to_prediction(t[n], d, n) - 1) for n in (40, 80, 160)]
    assert errs[0] > errs[1] > errs[2]
    for a, b in zip(errs, errs[1:]):
        assert 1.7 < math.log2(a / b) < 2.6
    # n^2 * err settles to a d-dependent constant
    consts = [e * n * n for e, n in zip(errs, (40, 80, 160))]
    assert abs(consts[2] - consts[1]) < abs(consts[1] - consts[0])


def test_prediction_parameters_and_sign():
    p = even_d_prediction(4)
    assert p.alpha == pytest.approx(-16 / math.pi)
    assert p.subleading_factor == pytest.approx(1.5)
    assert even_d_asymptotic_cn(2, 30) > 0
    assert even_d_asymptotic_cn(4, 30) < 0
    # huge n in log space
    assert ratio_to_prediction(ball_weyl_coefficients(2, 200)[200], 2, 200) == pytest.approx(1.0, abs=1e-4)


def test_prediction_domain():
    with pytest.raises(DomainError):
        even_d_prediction(3)
    with pytest.raises(DomainError):
        even_d_asymptotic_cn(2, 4)
    with pytest.raises(DomainError):
        ball_weyl_coefficients(0)
    with pytest.raises(DomainError):
        ball_weyl_coefficients(2, 1)
    with pytest.raises(DomainError):
        ball_weyl_via_logderivative(3)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_weyl_series_approximates_closed_form_at_large_argument(d):
    # optimal truncation of the divergent series at u = 20
    u = 20.0
    t = ball_weyl_coefficients(d, 14)
    partial = sum(float(t[n]) * u ** (-(n - 2)) for n in range(2, 15)) / (u * u)
    assert partial == pytest.approx(ball_heat_transform(d, u), rel=1e-9)


def test_closed_forms_against_scipy():
    for s in (1e-4, 0.01, 0.5, 1.0, 3.0, 40.0, 600.0):
        d2 = special.ive(2, s) / (s * s * special.ive(0, s))
        assert ball_heat_transform(2, s) == pytest.approx(d2, rel=1e-10)
    for s in (0.5, 1.0, 3.0, 40.0):
        d3 = (1 - 3 / s * (1 / math.tanh(s) - 1 / s)) / s**2
        assert ball_heat_transform(3, s) == pytest.approx(d3, rel=1e-12)
        assert ball_heat_transform(1, s) == pytest.approx((1 - math.tanh(s) / s) / s**2, rel=1e-14)


@pytest.mark.parametrize("u", [1e-7, 1e-3, 0.05, 0.5, 0.79, 0.81, 1.49, 1.51, 4.0])
def test_closed_forms_keep_full_precision_near_zero(u):
    import mpmath

    mpmath.mp.dps = 40
    U = mpmath.mpf(u)
    ref = {
        1: (1 - mpmath.tanh(U) / U) / U**2,
        2: mpmath.besseli(2, U) / mpmath.besseli(0, U) / U**2,
        3: (1 - 3 / U * (mpmath.coth(U) - 1 / U)) / U**2,
    }
    mpmath.mp.dps = 15
    for d, r in ref.items():
        assert ball_heat_transform(d, u) == pytest.approx(float(r), rel=2e-15)


def test_closed_forms_small_s_limit():
    # H(0) = mean of the torsion function: R^2/(d(d+2)) * 2
    assert ball_heat_transform(3, 1e-5) == pytest.approx(1 / 15, rel=1e-8)
    assert ball_heat_transform(2, 1e-4) == pytest.approx(1 / 8, rel=1e-6)
    assert ball_heat_transform(1, 1e-3) == pytest.approx(1 / 3, rel=1e-5)
    assert ball_heat_transform(2, 2.0, R=3.0) == pytest.approx(ball_heat_transform(2, 6.0) * 9, rel=1e-13)


def test_closed_form_domain():
    with pytest.raises(DomainError):
        ball_heat_transform(4, 1.0)
    with pytest.raises(DomainError):
        ball_heat_transform(2, 0.0)


def test_hypergeometric_values():
    assert hyp3f2_terminating(1) == 1 + F(1, 4) * -1 * -1 / F(1, 4)  # 1 + (1/4)(1)/(1/4)
    assert all(pochhammer_sum_side(n) == hypergeometric_side(n) for n in range(1, 25))
    with pytest.raises(DomainError):
        hyp3f2_terminating(0)


def test_hypergeometric_correction_is_order_inverse_square():
    cs = [float(n * n * (hyp3f2_terminating(n) - 2 - F(1, 2 * n))) for n in (25, 50, 100, 200)]
    diffs = [abs(b - a) for a, b in zip(cs, cs[1:])]
    assert diffs[0] > diffs[1] > diffs[2]
    assert 0.9 < cs[-1] < 1.2
