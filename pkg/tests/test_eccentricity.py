import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate, special

from weylheat.ball import ball_heat_transform, even_d_asymptotic_cn
from weylheat.eccentricity import (
    REFERENCE_NEAR_DISK_SERIES,
    REFERENCE_PROLATE_H1_SERIES,
    DiskLimitOrder,
    ProlateLimit,
    consistency_derivative,
    disk_limit_order,
    disk_limit_small_s,
    ellipse_small_s_transform,
    exp_i0_taylor,
    log_renormalized_cn,
    log_renormalized_limit_cn,
    near_disk_series,
    prolate_F,
    prolate_H0,
    prolate_H0_result,
    prolate_H0_series,
    prolate_H0_series_coefficients,
    prolate_H1,
    prolate_H1_complex,
    prolate_H1_log_constant,
    prolate_H1_result,
    prolate_H1_taylor,
    prolate_weyl_cn,
    prolate_weyl_prediction,
    prolate_weyl_ratio,
    prolate_weyl_table,
    renormalized_cn,
    renormalized_limit_cn,
    renormalized_series_cn,
    stirling_ratio_order0,
    stirling_ratio_order1,
    strip_moment,
    tanh_series,
)
from weylheat.errors import DomainError

F = Fraction

# -- near-disk orders -------------------------------------------------------


@pytest.mark.parametrize("s", [1e-3, 0.2, 1.0, 7.5, 90.0])
def test_order_zero_is_the_disk(s):
    assert disk_limit_order(0, s, 1.0) == pytest.approx(ball_heat_transform(2, s), rel=1e-13)
    assert disk_limit_order(0, s, 2.0) == pytest.approx(ball_heat_transform(2, s, R=2.0), rel=1e-13)


@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_continuous_across_precision_switch(j):
    below = disk_limit_order(j, 1.0 - 1e-9)
    above = disk_limit_order(j, 1.0 + 1e-9)
    assert above == pytest.approx(below, rel=1e-7)


@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_small_s_limits(j):
    assert disk_limit_small_s(j) == F(1, 2 ** (j + 3))
    assert disk_limit_order(j, 1e-4) == pytest.approx(float(disk_limit_small_s(j)), rel=1e-6)
    assert DiskLimitOrder(j).small_s_limit(2) == 4 * disk_limit_small_s(j)
    assert DiskLimitOrder(j)(0.7, 1.3) == disk_limit_order(j, 0.7, 1.3)


@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_large_u_finite(j):
    for u in (50.0, 700.0, 1000.0, 1e5):
        v = disk_limit_order(j, u)
        assert math.isfinite(v)
        assert abs(v) * u * u < 5.0


def test_first_order_from_exact_recursion():
    s_values = (0.5, 1.0, 2.0)
    fd = consistency_derivative(s_values)
    for f, s in zip(fd, s_values):
        assert f == pytest.approx(disk_limit_order(1, s), abs=1e-8)


def test_higher_orders_from_polynomial_fit_in_eps2():
    nodes = np.linspace(-0.06, 0.06, 7)
    s_values = [0.5, 1.0, 2.0]
    vals = np.array([ellipse_small_s_transform(x, s_values, orders=20) for x in nodes])
    for i, s in enumerate(s_values):
        c = np.polynomial.polynomial.polyfit(nodes, vals[:, i], 6)
        assert c[0] == pytest.approx(disk_limit_order(0, s), abs=1e-14)
        assert c[1] == pytest.approx(disk_limit_order(1, s), abs=1e-10)
        assert c[2] == pytest.approx(disk_limit_order(2, s), abs=1e-10)
        assert c[3] == pytest.approx(disk_limit_order(3, s), abs=1e-7)


def test_near_disk_domain():
    with pytest.raises(DomainError):
        disk_limit_order(4, 1.0)
    with pytest.raises(DomainError):
        disk_limit_order(1, 0.0)
    with pytest.raises(DomainError):
        DiskLimitOrder(5)
    with pytest.raises(DomainError):
        disk_limit_small_s(-1)


# -- renormalized c_n -------------------------------------------------------


def test_exp_i0_taylor_against_direct_product():
    for k in range(10):
        # e^-x = sum (-x)^a/a!, I0(x) = sum (x/2)^(2i)/i!^2
        ref = sum(
            F((-1) ** (k - 2 * i), math.factorial(k - 2 * i) * 4**i * math.factorial(i) ** 2) for i in range(k // 2 + 1)
        )
        assert exp_i0_taylor(k) == ref
    assert [near_disk_series(k) for k in range(4)] == [1, F(-1, 4), F(3, 64), F(-5, 768)]
    assert REFERENCE_NEAR_DISK_SERIES[2] != near_disk_series(2)


def test_renormalized_reduces_to_disk_leading_law():
    for n in (9, 41, 99):
        lead = 8 * math.exp(math.lgamma(n - 3)) / (math.pi * 2 ** (n - 2))
        assert renormalized_cn(n, 0.0) == pytest.approx(lead, rel=1e-13)
        # the two-term disk law carries Gamma(n-4)(n - 9/2) in place of Gamma(n-3)
        assert renormalized_cn(n, 0.0) / even_d_asymptotic_cn(2, n) == pytest.approx((n - 4) / (n - 4.5), rel=1e-12)


def test_renormalized_matches_truncated_series_for_small_argument():
    n = 40
    for eps in (0.01, 0.03, 0.06):
        x = n * eps * eps / 4
        exact = renormalized_cn(n, eps)
        approx = renormalized_series_cn(n, eps)
        assert abs(approx / exact - 1) < 2 * x**4


def test_renormalized_large_argument_limit():
    ratios = [math.exp(log_renormalized_cn(n, 0.5) - log_renormalized_limit_cn(n, 0.5)) for n in (101, 201, 401)]
    assert ratios[-1] == pytest.approx(1.000394, abs=2e-6)
    devs = [abs(r - 1) for r in ratios]
    assert devs[0] > devs[1] > devs[2]


def test_renormalized_overflow_and_scaling():
    assert renormalized_cn(400, 0.5) == math.inf
    assert renormalized_limit_cn(400, 0.5) == math.inf
    assert math.isfinite(log_renormalized_cn(400, 0.5))
    assert log_renormalized_cn(30, 0.2, 2.0) == pytest.approx(log_renormalized_cn(30, 0.2) - 28 * math.log(2))


def test_renormalized_domain():
    with pytest.raises(DomainError):
        renormalized_cn(4, 0.1)
    with pytest.raises(DomainError):
        renormalized_cn(10, 1.0)
    with pytest.raises(DomainError):
        renormalized_cn(10, 0.1, 0.0)
    with pytest.raises(DomainError):
        log_renormalized_limit_cn(10, 0.0)


# -- strip limit, order 0 ---------------------------------------------------


def test_h0_frozen_and_scaling():
    assert prolate_H0(1.0) == pytest.approx(0.1883243148684411, rel=1e-13)
    assert prolate_H0(0.5, 2.0) == pytest.approx(4 * prolate_H0(1.0), rel=1e-13)
    assert ProlateLimit(0)(1.0) == prolate_H0(1.0)


def test_h0_series_coefficients():
    assert prolate_H0_series_coefficients(5) == [F(1, 4), F(-1, 12), F(17, 576), F(-31, 2880), F(691, 172800)]


@pytest.mark.parametrize("x", [0.05, 0.25, 0.5, 0.75, 1.0, 1.3])
def test_h0_quadrature_matches_series_inside_radius(x):
    # terms shrink like (2x/pi)^(2k)
    assert prolate_H0(x) == pytest.approx(prolate_H0_series(x, 1.0, 150), abs=1e-12)


def test_h0_series_diverges_past_radius():
    partials = [prolate_H0_series(2.0, 1.0, k) for k in (10, 20, 40)]
    assert abs(partials[2] - prolate_H0(2.0)) > abs(partials[1] - prolate_H0(2.0)) > 1.0


def test_h0_probability_bound_and_monotonicity():
    vals = [s * s * prolate_H0(s) for s in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0)]
    assert all(0 < v < 1 for v in vals)
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_h0_against_independent_quadrature():
    s = 1.7
    w = lambda p: 2 * s * math.cos(p) / 2
    ref = integrate.quad(lambda p: math.cos(p) * (w(p) - math.tanh(w(p))), 0, math.pi / 2, epsabs=1e-14, epsrel=1e-13)[0]
    assert prolate_H0(s) == pytest.approx(4 / (math.pi * s**3) * ref, rel=1e-11)


def test_h0_error_estimate_reported():
    res = prolate_H0_result(3.0)
    assert res.abs_error_estimate < 1e-12 and res.value == prolate_H0(3.0)


def test_tanh_series_inside_radius():
    for z in (0.1, 0.7, 1.2, 0.5j + 0.3):
        assert complex(tanh_series(z, 60)) == pytest.approx(complex(np.tanh(z)), abs=1e-10)


@pytest.mark.parametrize("s", [12.0, 20.0])
def test_h0_large_s_asymptotics(s):
    series = 1 / s**2 - 4 / (math.pi * s**3) + sum(prolate_weyl_cn(n, 0) * s**-n for n in (5, 7, 9, 11))
    assert prolate_H0(s) == pytest.approx(series, abs=1e-11 * (12 / s) ** 13)


def test_strip_table_shape():
    table = prolate_weyl_table(9)
    assert table[0] == (2, 1.0)
    assert table[1][1] == pytest.approx(-4 / math.pi)
    assert [c for n, c in table if n % 2 == 0 and n > 2] == [0.0, 0.0, 0.0]
    assert table[3][1] == pytest.approx(0.5235987755982989, rel=1e-14)


# -- strip limit, order 1 ---------------------------------------------------


def test_h1_frozen():
    assert prolate_H1(1.0) == pytest.approx(-0.14522498666525163, rel=1e-12)
    assert ProlateLimit(1)(1.0) == prolate_H1(1.0)
    assert prolate_H1_result(1.0).abs_error_estimate < 1e-12


def test_h1_taylor_matches_reference_coefficients():
    got = prolate_H1_taylor(5)
    for g, p in zip(got, REFERENCE_PROLATE_H1_SERIES):
        assert g == pytest.approx(float(p), rel=1e-10)


def test_h1_complex_agrees_on_real_axis():
    for s in (0.3, 1.0, 2.5):
        z = prolate_H1_complex(complex(s, 0.0))
        assert z.real == pytest.approx(prolate_H1(s), rel=1e-11) and abs(z.imag) < 1e-13


@pytest.mark.parametrize("s", [0.4, 1.0, 3.0])
def test_h1_from_derivative_of_f(s):
    h = 1e-3
    d = (-prolate_F(s + 2 * h) + 8 * prolate_F(s + h) - 8 * prolate_F(s - h) + prolate_F(s - 2 * h)) / (12 * h)
    assert prolate_H1(s) == pytest.approx(-2 / (3 * math.pi * s**5) * d, rel=1e-9)


@pytest.mark.parametrize("m", [0, 1, 2, 5, 9])
def test_strip_moments_against_quadrature(m):
    f = lambda w: w ** (2 * m) * math.tanh(w) ** 2 / math.cosh(w) ** 2 if w < 300 else 0.0
    ref = integrate.quad(f, 0, math.inf, epsabs=0, epsrel=1e-13, limit=400)[0]
    assert strip_moment(m) == pytest.approx(ref, rel=1e-11)


def test_log_constant_frozen():
    assert prolate_H1_log_constant() == pytest.approx(-0.007296143569709701, abs=1e-13)


def test_h1_large_s_asymptotics():
    B = prolate_H1_log_constant()
    for s in (20.0, 40.0):
        series = -(2 / (math.pi * s**3)) * (math.log(s) + B)
        series += sum(prolate_weyl_cn(n, 1) * s**-n for n in range(5, 16, 2))
        assert prolate_H1(s) == pytest.approx(series, abs=1e-14)


def test_h1_odd_coefficients_frozen():
    got = [prolate_weyl_cn(n, 1) for n in (5, 7, 9)]
    assert got == pytest.approx([-0.09668487899715668, 0.05156554298549249, 0.42966116251798175], rel=1e-13)


@pytest.mark.parametrize("order", [0, 1])
def test_strip_weyl_ratio_approaches_one(order):
    devs = [abs(prolate_weyl_ratio(n, order) - 1) for n in (21, 41, 61, 121)]
    assert all(a > b for a, b in zip(devs, devs[1:]))
    assert devs[-1] < 0.03
    assert prolate_weyl_ratio(41, order) == pytest.approx(
        prolate_weyl_cn(41, order) / prolate_weyl_prediction(41, order), rel=1e-12
    )


def test_stirling_ratios_converge_like_inverse_k():
    for k in (10, 100, 1000):
        assert abs(stirling_ratio_order0(k) - 1) * k < 0.2
        assert abs(stirling_ratio_order1(k) - 1) * k < 1.4
    assert abs(stirling_ratio_order0(1000) - 1) < abs(stirling_ratio_order0(100) - 1)


def test_strip_domain():
    with pytest.raises(DomainError):
        prolate_weyl_cn(6, 0)
    with pytest.raises(DomainError):
        prolate_weyl_cn(3, 1)
    with pytest.raises(DomainError):
        prolate_weyl_cn(7, 2)
    with pytest.raises(DomainError):
        prolate_H0(-1.0)
    with pytest.raises(DomainError):
        prolate_H1(1.0, 0.0)
    with pytest.raises(DomainError):
        prolate_H1_taylor(5, radius=3.0)
    with pytest.raises(DomainError):
        strip_moment(-1)
    with pytest.raises(DomainError):
        stirling_ratio_order1(1)
    with pytest.raises(DomainError):
        ProlateLimit(2)
