import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import special

from weylheat.errors import DomainError, QuadratureError
from weylheat.exact import bessel_asymptotic_coeff
from weylheat.numerics import (
    adaptive_quadrature,
    bessel_i,
    bessel_j0,
    bessel_j0_zeros,
    bessel_j1,
    dirichlet_eta_even,
    dirichlet_eta_even_exact,
    polynomial_roots,
    spectral_modes,
    spectral_sum_oracle,
    stable_cmath_tanh,
    taylor_coefficients,
)

X_GRID = [0.0, 1e-8, 0.3, 1.0, 2.5, 7.0, 15.0, 29.9, 30.1, 45.0, 120.0, 400.0, 699.0]


@pytest.mark.parametrize("order", [0, 1, 2])
def test_bessel_i_scaled_against_scipy(order):
    for x in X_GRID:
        ref = special.ive(order, x)
        got = bessel_i(order, x, scaled=True)
        assert got == pytest.approx(ref, rel=1e-13, abs=1e-300), x


@pytest.mark.parametrize("order", [0, 1, 2])
def test_bessel_i_unscaled_against_scipy(order):
    for x in [0.5, 5.0, 29.0, 31.0, 200.0, 690.0]:
        assert bessel_i(order, x) == pytest.approx(special.iv(order, x), rel=1e-13)


def test_bessel_i_reference_values():
    assert bessel_i(0, 0.0) == 1.0
    assert bessel_i(1, 0.0) == 0.0
    assert bessel_i(1, 1.0) == pytest.approx(0.5651591039924850, rel=1e-15)


def test_bessel_i_large_x_matches_exact_asymptotic_coefficients():
    x = 50.0
    lhs = math.log(bessel_i(0, x, scaled=True)) + 0.5 * math.log(2 * math.pi * x)
    series = sum(float(bessel_asymptotic_coeff(0, j)) / x**j for j in range(12))
    assert lhs == pytest.approx(math.log(series), abs=1e-10)


def test_bessel_i_domain():
    with pytest.raises(DomainError):
        bessel_i(0, -1.0)
    with pytest.raises(DomainError):
        bessel_i(3, 1.0)
    with pytest.raises(DomainError):
        bessel_i(0, 800.0)
    assert math.isfinite(bessel_i(0, 5000.0, scaled=True))


def test_bessel_j_against_scipy():
    for x in [0.0, 0.5, 2.404825557695773, 10.0, 24.9, 25.1, 80.0, 1500.0]:
        assert bessel_j0(x) == pytest.approx(special.j0(x), abs=1e-14)
        assert bessel_j1(x) == pytest.approx(special.j1(x), abs=1e-14)


def test_j0_zeros_against_scipy_and_interlacing():
    zeros = bessel_j0_zeros(500)
    ref = special.jn_zeros(0, 500)
    assert np.max(np.abs(np.array(zeros) - ref)) < 1e-12
    assert all(abs(bessel_j0(z)) < 1e-12 for z in zeros)
    gaps = np.diff(zeros)
    assert abs(gaps[-1] - math.pi) < 1e-4
    assert np.all(np.abs(np.diff(gaps[5:] - math.pi)) >= 0)  # gaps approach pi monotonically


def test_quadrature_smooth_benchmark():
    res = adaptive_quadrature(math.sin, 0.0, math.pi)
    assert abs(res.value - 2.0) < 1e-12
    assert res.abs_error_estimate >= 0 and res.panels_used >= 1


def test_quadrature_fermi_moment_on_half_line():
    res = adaptive_quadrature(lambda z: z / (math.exp(z) + 1.0) if z < 700 else 0.0, 0.0, math.inf)
    assert abs(res.value - math.pi**2 / 12) < 1e-10


def test_quadrature_cos_tanh_against_bernoulli_series():
    res = adaptive_quadrature(lambda p: math.cos(p) * math.tanh(math.cos(p)), 0.0, 2 * math.pi)
    # int_0^2pi cos(phi) tanh(cos phi) = 2 pi sum_k c_k (2k)!/(4^k k!^2) over the odd tanh coefficients
    from weylheat.exact import bernoulli

    total = 0.0
    for k in range(1, 40):
        c = Fraction(4**k * (4**k - 1), math.factorial(2 * k)) * bernoulli(2 * k)
        total += float(c * Fraction(math.factorial(2 * k), 4**k * math.factorial(k) ** 2))
    assert res.value == pytest.approx(2 * math.pi * total, abs=1e-10)


ANALYTIC_CASES = [
    (math.exp, 0.0, 1.0, math.e - 1),
    (lambda x: 1 / (1 + x * x), 0.0, 1.0, math.pi / 4),
    (lambda x: math.sqrt(x), 0.0, 1.0, 2 / 3),
    (lambda x: math.log(x) if x > 0 else 0.0, 0.0, 1.0, -1.0),
    (lambda x: math.cos(20 * x), 0.0, math.pi / 2, math.sin(10 * math.pi) / 20),
    (lambda x: x**7, -1.0, 2.0, (2**8 - 1) / 8),
    (lambda x: math.exp(-x * x), 0.0, math.inf, math.sqrt(math.pi) / 2),
    (lambda x: 1 / math.cosh(x) ** 2 if x < 300 else 0.0, 0.0, math.inf, 1.0),
    (lambda x: math.exp(-x) * x**3, 0.0, math.inf, 6.0),
    (lambda x: abs(x - 0.3), 0.0, 1.0, 0.29),
    (lambda x: 1 / (1e-2 + x * x), -1.0, 1.0, 20 * math.atan(10)),
    (lambda x: math.sin(x) ** 2, 0.0, math.pi, math.pi / 2),
]


@pytest.mark.parametrize("f,lo,hi,exact", ANALYTIC_CASES)
def test_quadrature_error_estimate_is_sound(f, lo, hi, exact):
    res = adaptive_quadrature(f, lo, hi, rel_tol=1e-10)
    err = abs(res.value - exact)
    assert err <= max(res.abs_error_estimate, 1e-15) * 10 + 1e-15
    assert err <= max(1e-10 * abs(exact), 1e-14) * 10


def test_quadrature_complex_integrand():
    res = adaptive_quadrature(lambda x: cmath.exp(1j * x), 0.0, math.pi)
    assert abs(res.value - 2j) < 1e-12


def test_quadrature_budget_error_carries_estimate():
    with pytest.raises(QuadratureError) as info:
        adaptive_quadrature(lambda x: math.sin(1 / x) / x if x else 0.0, 0.0, 1.0, rel_tol=1e-14, max_panels=20)
    assert info.value.abs_error_estimate > 0


def test_roots_trivial():
    roots = sorted(z.real for z in polynomial_roots([-1.0, 0.0, 1.0]))
    assert roots == pytest.approx([-1.0, 1.0], abs=1e-14)


def test_roots_d7_pair():
    roots = polynomial_roots([1.0, -3.0, 3.0])
    for z in roots:
        assert abs(z) == pytest.approx(1 / math.sqrt(3), rel=1e-13)
        assert abs(cmath.phase(z)) == pytest.approx(math.pi / 6, rel=1e-13)


def test_roots_d9_triple():
    roots = sorted(polynomial_roots([-1.0, 6.0, -15.0, 15.0][::-1][::-1]), key=abs)
    # 15 v^3 - 15 v^2 + 6 v - 1 in ascending order is (-1, 6, -15, 15)
    assert abs(roots[0]) == pytest.approx(0.39346201465, abs=1e-10)
    assert min(abs(z.imag) for z in roots) < 1e-14


def test_roots_match_numpy_on_random_polynomials():
    rng = np.random.default_rng(7)
    for _ in range(12):
        deg = int(rng.integers(2, 12))
        coeffs = rng.normal(size=deg + 1)
        got = np.array(polynomial_roots(list(coeffs)))
        ref = np.roots(coeffs[::-1])
        for r in ref:
            assert np.min(np.abs(got - r)) < 1e-8 * max(1, abs(r))
        poly = np.polynomial.Polynomial(coeffs)
        norm = np.linalg.norm(coeffs)
        assert np.all(np.abs(poly(got)) < 1e-10 * norm)


def test_roots_accept_complex_pairs():
    roots = polynomial_roots([(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)])
    assert sorted(z.imag for z in roots) == pytest.approx([-1.0, 1.0], abs=1e-14)


def test_roots_reject_constant():
    with pytest.raises(DomainError):
        polynomial_roots([1.0])


def test_eta_values():
    assert dirichlet_eta_even_exact(2) == Fraction(1, 12)
    assert dirichlet_eta_even_exact(4) == Fraction(7, 720)
    assert dirichlet_eta_even(2) == pytest.approx(math.pi**2 / 12, rel=1e-15)
    assert dirichlet_eta_even(0) == 0.5
    assert all(1 - dirichlet_eta_even(m) < 1e-3 for m in range(12, 80, 2))
    with pytest.raises(DomainError):
        dirichlet_eta_even(3)


def test_eta_against_mpmath():
    import mpmath

    for m in (6, 10, 30, 100):
        assert dirichlet_eta_even(m) == pytest.approx(float(mpmath.altzeta(m)), rel=1e-14)


@pytest.mark.parametrize("d", [2, 3])
def test_spectral_weights_normalised(d):
    modes = spectral_modes(d, 1.0, 4000)
    total = math.fsum(m.weight for m in modes)
    assert total <= 1.0
    assert 1.0 - total < 2e-4


@pytest.mark.parametrize("d", [2, 3])
def test_spectral_sum_monotone_and_tail_bound_honoured(d):
    from weylheat.ball import ball_heat_transform

    exact = ball_heat_transform(d, 1.0, 1.0)
    prev = 0.0
    for m in (1, 5, 20, 100, 500):
        res = spectral_sum_oracle(d, 1.0, 1.0, m)
        assert res.value > prev
        assert 0.0 <= exact - res.value <= res.tail_bound
        prev = res.value


def test_spectral_small_s_matches_rayleigh_sum():
    # disk, s -> 0: sum 4/j^4 = 4 * 1/32
    res = spectral_sum_oracle(2, 1e-8, 1.0, 2000)
    assert res.value == pytest.approx(1 / 8, abs=1e-9)


def test_taylor_coefficients_of_exp():
    c = taylor_coefficients(cmath.exp, 8, 1.0, 32)
    assert np.allclose(c, [1 / math.factorial(k) for k in range(8)], atol=1e-15)


def test_stable_tanh_far_out():
    assert stable_cmath_tanh(800 + 1j) == pytest.approx(1.0)
    assert stable_cmath_tanh(-800 + 1j) == pytest.approx(-1.0)
    assert stable_cmath_tanh(0.3 + 0.2j) == pytest.approx(cmath.tanh(0.3 + 0.2j))
