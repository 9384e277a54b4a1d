"""Perturbation in eccentricity: near-disk orders, renormalized asymptotics, strip limit.

Two expansions of the ellipse transform at fixed minor semi-axis b:

* around the disk, H(s) = sum_j H_j^(0)(s) eps^(2j), closed forms in
  u = s b built from I_0, I_1 and I_2 = I_0 - 2 I_1/u;
* around the infinite strip, H(s) = H_0^(1)(s) + lam H_1^(1)(s) + ...,
  lam = 1 - eps^2 = (b/a)^2, where both orders are one-dimensional
  integrals over the angle.

Large-s coefficients of the strip orders follow from Mellin moments of
1/(e^z + 1) and tanh^2 sech^2, which reduce to Dirichlet eta values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError
from .exact import bernoulli
from .numerics import (
    QuadratureResult,
    adaptive_quadrature,
    bessel_i,
    dirichlet_eta_even,
    stable_cmath_tanh,
    taylor_coefficients,
)

__all__ = [
    "DiskLimitOrder",
    "ProlateLimit",
    "disk_limit_order",
    "disk_limit_small_s",
    "exp_i0_taylor",
    "REFERENCE_NEAR_DISK_SERIES",
    "near_disk_series",
    "log_renormalized_cn",
    "renormalized_cn",
    "renormalized_series_cn",
    "log_renormalized_limit_cn",
    "renormalized_limit_cn",
    "prolate_H0",
    "prolate_H0_result",
    "prolate_H0_series",
    "prolate_H0_series_coefficients",
    "tanh_series",
    "prolate_H1",
    "prolate_H1_result",
    "prolate_H1_complex",
    "prolate_H1_taylor",
    "REFERENCE_PROLATE_H1_SERIES",
    "prolate_F",
    "prolate_H1_log_constant",
    "strip_moment",
    "prolate_weyl_cn",
    "prolate_weyl_prediction",
    "prolate_weyl_ratio",
    "prolate_weyl_table",
    "stirling_ratio_order0",
    "stirling_ratio_order1",
    "ellipse_small_s_transform",
    "consistency_derivative",
]

QUAD_REL_TOL = 1e-12
SMALL_W = 1e-4


# ---------------------------------------------------------------------------
# Near-disk orders
# ---------------------------------------------------------------------------


def _disk_brackets(j: int, u, i0, i1, i2):
    """s^2 H_j^(0) as a function of u and the three Bessel values.

    Homogeneous of degree zero in (I_0, I_1, I_2), so scaled values work.
    """
    if j == 0:
        return 1 - 2 * i1 / (u * i0)
    if j == 1:
        r = i1 / i0
        return -(1 - 2 * r / u - r * r) / 2
    if j == 2:
        num = (
            -2 * u**3 * i0**5
            + 3 * u**2 * (4 + u**2) * i0**4 * i1
            - u * (24 + 11 * u**2) * i0**3 * i1**2
            + (16 + 8 * u**2 - 3 * u**4) * i0**2 * i1**3
            + 2 * u * (2 + 5 * u**2) * i0 * i1**4
            - 8 * u**2 * i1**5
        )
        return num / (16 * u**3 * i0**3 * i2**2)
    if j == 3:
        num = (
            u**3 * (-12 + 5 * u**2) * i0**6
            + 2 * u**2 * (36 + 7 * u**2) * i0**5 * i1
            - 2 * u * (72 + 57 * u**2 + 10 * u**4) * i0**4 * i1**2
            + 32 * (3 + 4 * u**2 + u**4) * i0**3 * i1**3
            + u * (8 + 52 * u**2 + 15 * u**4) * i0**2 * i1**4
            - 36 * u**2 * (2 + u**2) * i0 * i1**5
            + 24 * u**3 * i1**6
        )
        return num / (192 * u**3 * i0**4 * i2**2)
    raise DomainError(f"near-disk orders are available for j = 0..3, got {j}")


def disk_limit_order(j: int, s: float, b: float = 1.0) -> float:
    """H_j^(0)(s), the eps^(2j) coefficient of the ellipse transform at fixed b.

    For u = s b >= 1 and j <= 1 the double-precision scaled Bessel kernels
    are used. Otherwise the brackets cancel like u^(2 + 2j) (orders 0, 1)
    or worse (orders 2, 3), and the same expressions are evaluated in
    mpmath with enough guard digits to absorb the cancellation.
    """
    if j not in (0, 1, 2, 3):
        raise DomainError(f"near-disk orders are available for j = 0..3, got {j}")
    if not (s > 0 and b > 0):
        raise DomainError(f"need s > 0 and b > 0, got s={s}, b={b}")
    u = s * b
    if j <= 1 and u >= 1.0:
        i0 = bessel_i(0, u, scaled=True)
        i1 = bessel_i(1, u, scaled=True)
        i2 = i0 - 2.0 * i1 / u
        return float(_disk_brackets(j, u, i0, i1, i2)) / (s * s)
    lost = max(0.0, -math.log10(u)) * (2 * j + 8)
    ctx = mpmath.mp.clone()
    ctx.dps = 30 + int(lost)
    U = ctx.mpf(u)
    i0 = ctx.besseli(0, U)
    i1 = ctx.besseli(1, U)
    i2 = i0 - 2 * i1 / U
    return float(_disk_brackets(j, U, i0, i1, i2) / ctx.mpf(s) ** 2)


def disk_limit_small_s(j: int, b=1) -> Fraction:
    """s -> 0 value of H_j^(0): the lam^j coefficient of b^2/(4(2 - lam)), i.e. b^2/2^(j+3)."""
    if j < 0:
        raise DomainError(f"order must be >= 0, got {j}")
    return Fraction(b) ** 2 / 2 ** (j + 3)


@dataclass(frozen=True)
class DiskLimitOrder:
    """Order j of the near-disk expansion as a callable of (s, b)."""

    j: int

    def __post_init__(self):
        if self.j not in (0, 1, 2, 3):
            raise DomainError(f"near-disk orders are available for j = 0..3, got {self.j}")

    def __call__(self, s: float, b: float = 1.0) -> float:
        return disk_limit_order(self.j, s, b)

    def small_s_limit(self, b=1) -> Fraction:
        return disk_limit_small_s(self.j, b)


# ---------------------------------------------------------------------------
# Renormalized small-eps asymptotics of c_n
# ---------------------------------------------------------------------------


def exp_i0_taylor(k: int) -> Fraction:
    """Coefficient of x^k in e^(-x) I_0(x): (-1)^k (2k-1)!!/(k!)^2."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    double_fact = math.prod(range(1, 2 * k, 2))
    return Fraction((-1) ** k * double_fact, math.factorial(k) ** 2)


# Reference bracket of the four-term near-disk c_n law, in powers of n eps^2.
# The k = 2 entry disagrees with exp_i0_taylor(2)/16 = 3/64.
REFERENCE_NEAR_DISK_SERIES = (Fraction(1), Fraction(-1, 4), Fraction(1, 64), Fraction(-5, 768))


def near_disk_series(k: int) -> Fraction:
    """Coefficient of (n eps^2)^k in e^(-x) I_0(x) with x = n eps^2/4."""
    return exp_i0_taylor(k) / 4**k


def _log_disk_prefactor(n: int, b: float) -> float:
    # 8 Gamma(n-3) / (pi (2b)^(n-2))
    return math.log(8.0 / math.pi) + math.lgamma(n - 3) - (n - 2) * math.log(2.0 * b)


def _check_renormalized(n: int, eps: float, b: float) -> None:
    if n < 5:
        raise DomainError(f"n must be >= 5, got {n}")
    if not (0.0 <= eps < 1.0):
        raise DomainError(f"eps must lie in [0, 1), got {eps}")
    if not b > 0:
        raise DomainError(f"b must be positive, got {b}")


def log_renormalized_cn(n: int, eps: float, b: float = 1.0) -> float:
    """log of 8 Gamma(n-3)/(pi (2b)^(n-2)) e^(-x) I_0(x), x = n eps^2/4.

    The form comes from freezing the disk solution radially and letting only
    the boundary radius R(phi) = b/sqrt(1 - eps^2 cos^2 phi) vary; the angular
    average of exp(-j eps^2 cos^2 phi / 2) produces e^(-x) I_0(x).
    """
    _check_renormalized(n, eps, b)
    x = n * eps * eps / 4.0
    return _log_disk_prefactor(n, b) + math.log(bessel_i(0, x, scaled=True))


def renormalized_cn(n: int, eps: float, b: float = 1.0) -> float:
    """The renormalized c_n; inf when it exceeds the double range (use the log form)."""
    try:
        return math.exp(log_renormalized_cn(n, eps, b))
    except OverflowError:
        return math.inf


def renormalized_series_cn(n: int, eps: float, b: float = 1.0, terms: int = 4) -> float:
    """Prefactor times the truncated Taylor series of e^(-x) I_0(x)."""
    _check_renormalized(n, eps, b)
    x = n * eps * eps / 4.0
    bracket = math.fsum(float(exp_i0_taylor(k)) * x**k for k in range(terms))
    return math.exp(_log_disk_prefactor(n, b)) * bracket


def log_renormalized_limit_cn(n: int, eps: float, b: float = 1.0) -> float:
    """log of 16 Gamma(n - 7/2)/(sqrt(2 pi^3) (2b)^(n-2) eps), the n eps^2 -> inf form."""
    _check_renormalized(n, eps, b)
    if eps == 0:
        raise DomainError("the large n eps^2 form needs eps > 0")
    return (
        math.log(16.0)
        + math.lgamma(n - 3.5)
        - 0.5 * math.log(2.0 * math.pi**3)
        - (n - 2) * math.log(2.0 * b)
        - math.log(eps)
    )


def renormalized_limit_cn(n: int, eps: float, b: float = 1.0) -> float:
    try:
        return math.exp(log_renormalized_limit_cn(n, eps, b))
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# Strip limit, order lam^0
# ---------------------------------------------------------------------------


def tanh_series(z, kmax: int = 30):
    """sum_{k=1}^{kmax} 2^(2k)(2^(2k)-1) B_2k z^(2k-1)/(2k)!, convergent for |z| < pi/2."""
    total = 0.0
    for k in range(1, kmax + 1):
        c = Fraction(4**k * (4**k - 1), math.factorial(2 * k)) * bernoulli(2 * k)
        total += float(c) * z ** (2 * k - 1)
    return total


def prolate_H0_series_coefficients(count: int) -> list:
    """Exact c_k with H_0^(1) = sum_k c_k b^(2k+2) s^(2k), k = 0..count-1."""
    out = []
    for k in range(2, count + 2):
        out.append(-2 * (4**k - 1) * bernoulli(2 * k) / math.factorial(k) ** 2)
    return out


def prolate_H0_series(s: float, b: float = 1.0, kmax: int = 12) -> float:
    """Partial sum over k = 2..kmax of -2 b^2 (2^2k - 1) B_2k (bs)^(2k-4)/(k!)^2."""
    coeffs = prolate_H0_series_coefficients(kmax - 1)
    x = (b * s) ** 2
    return b * b * math.fsum(float(c) * x**i for i, c in enumerate(coeffs))


def _w_minus_tanh(w: float) -> float:
    if w < 0.1:
        # tanh series from the z^3 term; eight terms reach 1e-17 relative at w = 0.1
        return -tanh_series(w, 9) + w
    return w - math.tanh(w)


def _check_sb(s, b):
    if not (s > 0 and b > 0):
        raise DomainError(f"need s > 0 and b > 0, got s={s}, b={b}")


def prolate_H0_result(s: float, b: float = 1.0, rel_tol: float = QUAD_REL_TOL) -> QuadratureResult:
    """H_0^(1)(s) with the quadrature error estimate.

    1/s^2 - (1/(pi b s^3)) int_0^2pi cos(phi) tanh(bs cos phi) dphi is
    rewritten as (4/(pi b s^3)) int_0^(pi/2) cos(phi) (w - tanh w) dphi,
    w = bs cos phi, which has no cancellation at small s.
    """
    _check_sb(s, b)
    L = b * s
    res = adaptive_quadrature(lambda p: math.cos(p) * _w_minus_tanh(L * math.cos(p)), 0.0, math.pi / 2, rel_tol)
    scale = 4.0 / (math.pi * b * s**3)
    return QuadratureResult(scale * res.value, scale * res.abs_error_estimate, res.panels_used)


def prolate_H0(s: float, b: float = 1.0) -> float:
    return prolate_H0_result(s, b).value


# ---------------------------------------------------------------------------
# Strip limit, order lam^1
# ---------------------------------------------------------------------------


def _h1_integrand_real(w: float) -> float:
    """tanh^2 w sech^2 w + tanh^3 w / w for w >= 0."""
    if w < SMALL_W:
        return 2.0 * w * w - (8.0 / 3.0) * w**4
    t = math.exp(-2.0 * w)
    th = (1.0 - t) / (1.0 + t)
    sech2 = 4.0 * t / (1.0 + t) ** 2
    return th * th * sech2 + th**3 / w


def _h1_integrand_complex(w: complex) -> complex:
    if abs(w) < SMALL_W:
        return 2.0 * w * w - (8.0 / 3.0) * w**4
    th = stable_cmath_tanh(w)
    return th * th * (1 - th * th) + th**3 / w


def prolate_H1_result(s: float, b: float = 1.0, rel_tol: float = QUAD_REL_TOL) -> QuadratureResult:
    """H_1^(1)(s) = -(2/(pi s^2)) int_0^(pi/2) sin^2 phi [tanh^2 w sech^2 w + tanh^3 w / w] dphi."""
    _check_sb(s, b)
    L = b * s
    res = adaptive_quadrature(
        lambda p: math.sin(p) ** 2 * _h1_integrand_real(L * math.cos(p)), 0.0, math.pi / 2, rel_tol
    )
    scale = -2.0 / (math.pi * s * s)
    return QuadratureResult(scale * res.value, abs(scale) * res.abs_error_estimate, res.panels_used)


def prolate_H1(s: float, b: float = 1.0) -> float:
    return prolate_H1_result(s, b).value


def prolate_H1_complex(s: complex, b: float = 1.0, rel_tol: float = QUAD_REL_TOL) -> complex:
    """H_1^(1) continued to complex s (same integral, complex w)."""
    res = adaptive_quadrature(
        lambda p: math.sin(p) ** 2 * _h1_integrand_complex(b * s * math.cos(p)), 0.0, math.pi / 2, rel_tol
    )
    return -2.0 * res.value / (math.pi * s * s)


# Reference values: coefficients of b^(2k+2) s^(2k), k = 0..4.
REFERENCE_PROLATE_H1_SERIES = (
    Fraction(-1, 4),
    Fraction(1, 6),
    Fraction(-55, 576),
    Fraction(11, 216),
    Fraction(-4487, 172800),
)


def prolate_H1_taylor(count: int = 5, b: float = 1.0, radius: float = 1.0, points: int = 64) -> list:
    """Taylor coefficients of H_1^(1) in s^2, by contour integration in t = s^2.

    H_1^(1) is even in s and analytic for |s| < pi/(2b), so g(t) = H_1^(1)(sqrt t)
    is analytic in |t| < (pi/(2b))^2 and any branch of the root will do.
    """
    if radius >= (math.pi / (2 * b)) ** 2:
        raise DomainError("contour radius must stay inside the disk of convergence")
    coeffs = taylor_coefficients(lambda t: prolate_H1_complex(cmath.sqrt(t), b), count, radius, points)
    return [c.real for c in coeffs]


def prolate_F(s: float, b: float = 1.0, rel_tol: float = QUAD_REL_TOL) -> float:
    """F(s) = s^4 int_0^(pi/2) sin^2 phi tanh^3(w)/w dphi, for H_1^(1) = -(2/(3 pi s^5)) F'(s).

    Uses tanh^2 sech^2 = (1/3) d/dw tanh^3, so the H_1 integrand is (1/(3 L^3)) d/dL of L^4 times
    the tanh^3/w average, L = bs.
    """
    _check_sb(s, b)
    L = b * s

    def g(p):
        w = L * math.cos(p)
        if w < SMALL_W:
            return math.sin(p) ** 2 * (w * w - w**4)
        return math.sin(p) ** 2 * math.tanh(w) ** 3 / w

    return s**4 * adaptive_quadrature(g, 0.0, math.pi / 2, rel_tol).value


def _tanh2_sech2(w: float) -> float:
    t = math.exp(-2.0 * w)
    return ((1.0 - t) / (1.0 + t)) ** 2 * 4.0 * t / (1.0 + t) ** 2


def strip_moment(m: int) -> float:
    """J_m = int_0^inf w^(2m) tanh^2 w sech^2 w dw in closed form.

    tanh^2 sech^2 = sech^2 - sech^4 and the Mellin moments of sech^2, sech^4
    reduce to eta values: J_m = (2m)!/2^(2m+1) [(8/3) eta(2m-2) + (4/3) eta(2m)],
    with eta(0) = 1/2 (J_0 = 1/3).
    """
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    if m == 0:
        return 1.0 / 3.0
    return math.factorial(2 * m) / 2.0 ** (2 * m + 1) * (
        8.0 / 3.0 * dirichlet_eta_even(2 * m - 2) + 4.0 / 3.0 * dirichlet_eta_even(2 * m)
    )


def prolate_H1_log_constant() -> float:
    """B in H_1^(1) = -(2/(pi b s^3)) [ln(bs) + B] + O(s^-5) at large s.

    B = (ln 2 - 1) + mu + 1/3 with mu = -3 int_0^inf ln(w) tanh^2 w sech^2 w dw:
    ln 2 - 1 comes from int_0^1 q ln q / sqrt(1 - q^2) dq, 1/3 from the moment J_0.
    """

    def f(w):
        return math.log(w) * _tanh2_sech2(w) if w > 0 else 0.0

    lo = adaptive_quadrature(f, 0.0, 1.0, 1e-13).value
    hi = adaptive_quadrature(f, 1.0, 40.0, 1e-13).value
    return math.log(2.0) - 1.0 - 3.0 * (lo + hi) + 1.0 / 3.0


# ---------------------------------------------------------------------------
# Strip-limit Weyl coefficients
# ---------------------------------------------------------------------------


def _log_order0(n: int) -> float:
    # n = 2k + 5: (8/pi) (2k-1)!! (2k+1)! eta(2k+2) / (k! 2^k 2^(2k+2))
    k = (n - 5) // 2
    log_dfact = math.lgamma(2 * k + 1) - k * math.log(2.0) - math.lgamma(k + 1)
    return (
        math.log(8.0 / math.pi)
        + log_dfact
        + math.lgamma(2 * k + 2)
        + math.log(dirichlet_eta_even(2 * k + 2))
        - math.lgamma(k + 1)
        - k * math.log(2.0)
        - (2 * k + 2) * math.log(2.0)
    )


def _order1(n: int) -> float:
    # n = 2m + 3: C_m (2m - 3) J_m / (pi m), C_m = (2m-2)!/(2^(2m-1) m! (m-1)!)
    m = (n - 3) // 2
    log_c = math.lgamma(2 * m - 1) - (2 * m - 1) * math.log(2.0) - math.lgamma(m + 1) - math.lgamma(m)
    log_j = (
        math.lgamma(2 * m + 1)
        - (2 * m + 1) * math.log(2.0)
        + math.log(8.0 / 3.0 * dirichlet_eta_even(2 * m - 2) + 4.0 / 3.0 * dirichlet_eta_even(2 * m))
    )
    return (2 * m - 3) / (math.pi * m) * math.exp(log_c + log_j)


def prolate_weyl_cn(n: int, lambda_order: int, b: float = 1.0) -> float:
    """Exact large-s coefficient of s^-n in the strip-limit order lam^lambda_order.

    Order 0 extends the angle integral of 1/(e^(2bs cos phi) + 1) to the whole
    half-line, so every coefficient is a Fermi-Dirac moment Gamma(m+1) eta(m+1).
    Order 1 is the Mellin expansion of the same angle integral with
    tanh^2 sech^2 and tanh^3/w; all exponential layers are contained in the
    eta values, so nothing is truncated. Valid for odd n >= 5; the s^-2,
    s^-3 terms (and a ln(bs)/s^3 term at order 1) are separate.
    """
    if lambda_order not in (0, 1):
        raise DomainError(f"lambda_order must be 0 or 1, got {lambda_order}")
    if n < 5 or n % 2 == 0:
        raise DomainError(f"strip-limit coefficients are defined for odd n >= 5, got {n}")
    if not b > 0:
        raise DomainError(f"b must be positive, got {b}")
    scale = b ** -(n - 2)
    if lambda_order == 0:
        return math.exp(_log_order0(n)) * scale
    return _order1(n) * scale


def _log_prediction(n: int) -> float:
    return math.log(16.0) + 0.5 * math.log(2.0 / math.pi**3) + math.lgamma(n - 3.5) - (n - 2) * math.log(2.0)


def prolate_weyl_prediction(n: int, lambda_order: int, b: float = 1.0) -> float:
    """16 sqrt(2/pi^3) Gamma(n - 7/2)/(2b)^(n-2) times 1 (order 0) or 1/2 (order 1)."""
    if lambda_order not in (0, 1):
        raise DomainError(f"lambda_order must be 0 or 1, got {lambda_order}")
    factor = 1.0 if lambda_order == 0 else 0.5
    return factor * math.exp(_log_prediction(n)) * b ** -(n - 2)


def prolate_weyl_ratio(n: int, lambda_order: int) -> float:
    """exact/prediction, formed in log space."""
    if lambda_order == 0:
        prolate_weyl_cn(n, 0)
        return math.exp(_log_order0(n) - _log_prediction(n))
    return prolate_weyl_cn(n, 1) / prolate_weyl_prediction(n, 1)


def prolate_weyl_table(max_n: int, b: float = 1.0) -> list:
    """[(n, c_n)] of H_0^(1) for n = 2..max_n: c_2 = 1, c_3 = -4/(pi b), even n >= 4 vanish."""
    out = [(2, 1.0), (3, -4.0 / (math.pi * b))]
    for n in range(4, max_n + 1):
        out.append((n, 0.0 if n % 2 == 0 else prolate_weyl_cn(n, 0, b)))
    return out


def stirling_ratio_order0(k: int) -> float:
    """[Gamma(2k+1) Gamma(2k+3)/(2^2k Gamma(k+1) Gamma(k+2))] / [2 sqrt(2/pi) Gamma(2k + 3/2)]."""
    lhs = math.lgamma(2 * k + 1) + math.lgamma(2 * k + 3) - 2 * k * math.log(2.0) - math.lgamma(k + 1) - math.lgamma(k + 2)
    rhs = math.log(2.0 * math.sqrt(2.0 / math.pi)) + math.lgamma(2 * k + 1.5)
    return math.exp(lhs - rhs)


def stirling_ratio_order1(k: int) -> float:
    """[(2k-3) Gamma(2k-1) Gamma(2k)/(2^(2k-1) Gamma(k+1) Gamma(k))] / [sqrt(2/pi) Gamma(2k - 1/2)]."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    lhs = (
        math.log(2 * k - 3)
        + math.lgamma(2 * k - 1)
        + math.lgamma(2 * k)
        - (2 * k - 1) * math.log(2.0)
        - math.lgamma(k + 1)
        - math.lgamma(k)
    )
    rhs = 0.5 * math.log(2.0 / math.pi) + math.lgamma(2 * k - 0.5)
    return math.exp(lhs - rhs)


@dataclass(frozen=True)
class ProlateLimit:
    """Order 0 or 1 of the strip expansion as a callable of (s, b)."""

    order: int

    def __post_init__(self):
        if self.order not in (0, 1):
            raise DomainError(f"strip-limit order must be 0 or 1, got {self.order}")

    def __call__(self, s: float, b: float = 1.0) -> float:
        return prolate_H0(s, b) if self.order == 0 else prolate_H1(s, b)


# ---------------------------------------------------------------------------
# Cross-check: near-disk order 1 from the exact small-s coefficients
# ---------------------------------------------------------------------------


def ellipse_small_s_transform(lam: float, s_values, b: float = 1.0, orders: int = 24, dps: int = 40) -> list:
    """H(s) of the ellipse with semi-axes (b/sqrt(1 - lam), b), summed from its small-s series.

    lam < 0 is allowed and describes the ellipse stretched along the other
    axis. The remainder after the last order is closed geometrically, which
    is accurate once the lowest eigenvalue dominates the coefficients.
    """
    from .ellipse import NumericEllipse, small_s_coefficients, small_s_transform

    ctx = mpmath.mp.clone()
    ctx.dps = dps
    bb = ctx.mpf(b)
    a = bb / ctx.sqrt(1 - ctx.mpf(lam))
    coeffs = small_s_coefficients(NumericEllipse(a, bb, dps), orders)
    return [small_s_transform(coeffs, float(s), geometric_tail=True) for s in s_values]


def consistency_derivative(s_values, b: float = 1.0, step: float = 1e-4, orders: int = 24) -> list:
    """Centered difference in eps^2 at eps = 0 of the reconstructed ellipse transform."""
    plus = ellipse_small_s_transform(step, s_values, b, orders)
    minus = ellipse_small_s_transform(-step, s_values, b, orders)
    return [(p - m) / (2.0 * step) for p, m in zip(plus, minus)]
