"""Floating-point kernels: Bessel functions, quadrature, roots, eta values, eigen-sums."""

from __future__ import annotations

import cmath
import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
import numpy as np

from .errors import DomainError, QuadratureError, RootFindingError
from .exact import bernoulli, bessel_asymptotic_coeff

__all__ = [
    "bessel_i",
    "bessel_j0",
    "bessel_j1",
    "bessel_j0_zeros",
    "QuadratureResult",
    "adaptive_quadrature",
    "polynomial_roots",
    "dirichlet_eta_even",
    "dirichlet_eta_even_exact",
    "SpectralMode",
    "SpectralSum",
    "spectral_modes",
    "spectral_sum_oracle",
    "taylor_coefficients",
]

# ---------------------------------------------------------------------------
# Modified Bessel I_n, integer order
# ---------------------------------------------------------------------------

_SERIES_LIMIT = 30.0
_UNSCALED_LIMIT = 700.0


@lru_cache(maxsize=None)
def _asymptotic_coeffs(order: int) -> tuple:
    # Coefficients of x^-j in e^-x sqrt(2 pi x) I_order(x); enough for x > 30.
    return tuple(float(bessel_asymptotic_coeff(2 * order, j)) for j in range(80))


def _bessel_i_series(order: int, x: float) -> float:
    half = 0.5 * x
    term = half**order / math.factorial(order)
    total = term
    q = half * half
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + order))
        total += term
        if term <= 1e-17 * total:
            return total


def _bessel_i_scaled_asymptotic(order: int, x: float) -> float:
    total = 0.0
    prev = math.inf
    xp = 1.0
    for a in _asymptotic_coeffs(order):
        term = a / xp
        if abs(term) > prev:
            break
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
        prev = abs(term)
        xp *= x
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i(order: int, x: float, scaled: bool = False) -> float:
    """Modified Bessel function I_order(x) for integer order 0..2 and x >= 0.

    With ``scaled=True`` returns e^-x I_order(x), which stays finite for any x.
    Power series below x = 30, the large-x expansion above.
    """
    if order not in (0, 1, 2):
        raise DomainError(f"bessel_i supports orders 0..2, got {order}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"bessel_i needs x >= 0, got {x}")
    if x <= _SERIES_LIMIT:
        value = _bessel_i_series(order, x)
        return value * math.exp(-x) if scaled else value
    value = _bessel_i_scaled_asymptotic(order, x)
    if scaled:
        return value
    if x > _UNSCALED_LIMIT:
        raise DomainError(f"I_{order}({x}) overflows; use scaled=True")
    return value * math.exp(x)


# ---------------------------------------------------------------------------
# Bessel J_0, J_1 and the zeros of J_0
# ---------------------------------------------------------------------------

_HANKEL_LIMIT = 25.0


@lru_cache(maxsize=None)
def _hankel_coeffs(order: int) -> tuple:
    # a_k(nu) = prod_{i<=k} (4nu^2 - (2i-1)^2) / (k! 8^k) = (-1)^k * I-expansion coefficient
    return tuple(float((-1) ** k * bessel_asymptotic_coeff(2 * order, k)) for k in range(80))


def _bessel_j_hankel(order: int, x: float) -> float:
    a = _hankel_coeffs(order)
    p = q = 0.0
    prev = math.inf
    xp = 1.0
    for k, ak in enumerate(a):
        term = ak / xp
        if abs(term) > prev:
            break
        prev = abs(term)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * term
        else:
            q += sign * term
        if abs(term) < 1e-18:
            break
        xp *= x
    chi = x - (0.5 * order + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def _bessel_j_miller(x: float) -> tuple:
    """J_0(x), J_1(x) by backward recurrence normalised with J_0 + 2 sum J_2k = 1."""
    start = 2 * ((int(x) + 20 + int(math.sqrt(40.0 * x))) // 2)
    j_next, j_cur = 0.0, 1e-300
    norm = 0.0
    j0 = j1 = 0.0
    for k in range(start, 0, -1):
        j_prev = 2.0 * k / x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if abs(j_cur) > 1e250:
            j_cur *= 1e-250
            j_next *= 1e-250
            norm *= 1e-250
            j1 *= 1e-250
        # j_cur now holds J_{k-1}
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
        if k - 1 == 1:
            j1 = j_cur
    j0 = j_cur
    norm += j0
    return j0 / norm, j1 / norm


def bessel_j0(x: float) -> float:
    x = abs(x)
    if x < 1e-8:
        return 1.0 - 0.25 * x * x
    if x >= _HANKEL_LIMIT:
        return _bessel_j_hankel(0, x)
    return _bessel_j_miller(x)[0]


def bessel_j1(x: float) -> float:
    sign = -1.0 if x < 0 else 1.0
    x = abs(x)
    if x < 1e-8:
        return sign * 0.5 * x
    if x >= _HANKEL_LIMIT:
        return sign * _bessel_j_hankel(1, x)
    return sign * _bessel_j_miller(x)[1]


_J0_ZEROS: tuple = ()


def _mcmahon_j0(k: int) -> float:
    beta = (k - 0.25) * math.pi
    e = 1.0 / (8.0 * beta)
    return beta + e - (124.0 / 3.0) * e**3 + (120928.0 / 15.0) * e**5


def bessel_j0_zeros(count: int) -> tuple:
    """First ``count`` positive zeros of J_0, McMahon guesses polished by Newton."""
    global _J0_ZEROS
    if count <= len(_J0_ZEROS):
        return _J0_ZEROS[:count]
    zeros = list(_J0_ZEROS)
    for k in range(len(zeros) + 1, count + 1):
        x = _mcmahon_j0(k)
        for _ in range(50):
            # J0' = -J1
            step = bessel_j0(x) / bessel_j1(x)
            x += step
            if abs(step) < 4e-16 * x:
                break
        zeros.append(x)
    _J0_ZEROS = tuple(zeros)
    return _J0_ZEROS


# ---------------------------------------------------------------------------
# Adaptive Gauss-Kronrod quadrature
# ---------------------------------------------------------------------------

_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# 7-point Gauss weights on the odd-indexed Kronrod nodes 1, 3, 5, 7
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

ABS_FLOOR = 1e-15


@dataclass(frozen=True)
class QuadratureResult:
    value: complex | float
    abs_error_estimate: float
    panels_used: int


def _gk15(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    for i in range(7):
        dx = h * _XGK[i]
        fsum = f(c - dx) + f(c + dx)
        kron += _WGK[i] * fsum
        if i % 2 == 1:
            gauss += _WG[i // 2] * fsum
    kron *= h
    gauss *= h
    return kron, abs(kron - gauss)


def adaptive_quadrature(
    f: Callable,
    lo: float,
    hi: float,
    rel_tol: float = 1e-12,
    abs_floor: float = ABS_FLOOR,
    max_panels: int = 4000,
) -> QuadratureResult:
    """Integrate f over [lo, hi] by globally adaptive 7/15-point Gauss-Kronrod.

    The panel with the largest |K15 - G7| is bisected until the summed
    estimate falls below max(rel_tol*|value|, abs_floor). ``hi = inf`` maps
    [lo, inf) to (0, 1] with z = lo + (1-t)/t; f may be complex valued.
    """
    if math.isinf(hi):
        if math.isinf(lo):
            raise DomainError("only one infinite endpoint is supported")

        def g(t, _f=f, _lo=lo):
            return _f(_lo + (1.0 - t) / t) / (t * t)

        return adaptive_quadrature(g, 0.0, 1.0, rel_tol, abs_floor, max_panels)
    if hi == lo:
        return QuadratureResult(0.0, 0.0, 1)

    val, err = _gk15(f, lo, hi)
    is_complex = isinstance(val, complex)
    heap = [(-err, lo, hi, val, err)]
    total, total_err = val, err
    panels = 1
    while total_err > max(rel_tol * abs(total), abs_floor):
        if panels >= max_panels:
            raise QuadratureError(
                f"quadrature budget of {max_panels} panels exhausted "
                f"(estimate {total!r}, error {total_err:.3e})",
                total,
                total_err,
            )
        _, a, b, v, e = heapq.heappop(heap)
        m = 0.5 * (a + b)
        v1, e1 = _gk15(f, a, m)
        v2, e2 = _gk15(f, m, b)
        heapq.heappush(heap, (-e1, a, m, v1, e1))
        heapq.heappush(heap, (-e2, m, b, v2, e2))
        panels += 1
        # re-sum rather than update to keep rounding drift out of the estimate
        total = sum(p[3] for p in heap) if is_complex else math.fsum(p[3] for p in heap)
        total_err = math.fsum(p[4] for p in heap)
    return QuadratureResult(total, total_err, panels)


# ---------------------------------------------------------------------------
# Polynomial roots: Aberth-Ehrlich simultaneous iteration + Newton polishing
# ---------------------------------------------------------------------------


def _to_complex(c) -> complex:
    if isinstance(c, (tuple, list)):
        return complex(c[0], c[1])
    return complex(c)


def polynomial_roots(
    coeffs: Sequence,
    precision_digits: int = 12,
    max_iter: int = 500,
    seed: int = 20091,
) -> list:
    """All complex roots (with multiplicity) of sum_k coeffs[k] v^k.

    Coefficients are in ascending powers, each a complex number or an
    (re, im) pair. Iteration runs in mpmath with precision_digits + 15
    working digits; every returned root satisfies
    |P(root)| < 10^(2 - precision_digits) * ||P||.
    """
    c = [_to_complex(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    degree = len(c) - 1
    if degree < 1:
        raise DomainError("polynomial_roots needs degree >= 1 with nonzero leading coefficient")

    ctx = mpmath.mp.clone()
    ctx.dps = precision_digits + 15
    mc = [ctx.mpc(x.real, x.imag) for x in c]
    lead = mc[-1]
    monic = [x / lead for x in mc]
    norm_p = math.sqrt(sum(abs(x) ** 2 for x in c))

    def p_and_dp(z):
        p = monic[-1]
        dp = ctx.mpc(0)
        for a in reversed(monic[:-1]):
            dp = dp * z + p
            p = p * z + a
        return p, dp

    # Fujiwara-type radius for the initial circle
    radius = 2 * max(abs(monic[k]) ** (ctx.mpf(1) / (degree - k)) for k in range(degree))
    if radius == 0:
        return [0j] * degree
    rng = random.Random(seed)
    z = [
        radius * 0.5 * ctx.expj(2 * ctx.pi * (k + rng.uniform(0.1, 0.4)) / degree)
        for k in range(degree)
    ]
    tol = ctx.mpf(10) ** (-(precision_digits + 5))
    done = [False] * degree
    for _ in range(max_iter):
        for i in range(degree):
            if done[i]:
                continue
            p, dp = p_and_dp(z[i])
            if p == 0:
                done[i] = True
                continue
            ratio = p / dp
            s = sum((1 / (z[i] - z[j]) for j in range(degree) if j != i), ctx.mpc(0))
            w = ratio / (1 - ratio * s)
            z[i] -= w
            if abs(w) <= tol * max(1, abs(z[i])):
                done[i] = True
        if all(done):
            break
    else:
        bad = [complex(z[i]) for i in range(degree) if not done[i]]
        raise RootFindingError(f"{len(bad)} roots did not converge in {max_iter} iterations", bad)

    # Newton polish; multiple roots just stop improving
    for i in range(degree):
        for _ in range(5):
            p, dp = p_and_dp(z[i])
            if dp == 0 or p == 0:
                break
            step = p / dp
            z[i] -= step
            if abs(step) <= tol * max(1, abs(z[i])):
                break

    bound = 10.0 ** (2 - precision_digits) * norm_p
    bad = []
    for i in range(degree):
        p, _ = p_and_dp(z[i])
        if abs(p * lead) >= bound:
            bad.append(complex(z[i]))
    if bad:
        raise RootFindingError("polished roots fail the residual bound", bad)
    return [complex(x) for x in z]


# ---------------------------------------------------------------------------
# Dirichlet eta at even arguments
# ---------------------------------------------------------------------------


def dirichlet_eta_even_exact(m: int) -> Fraction:
    """Rational r with eta(m) = r * pi^m, for even m >= 0.

    eta(m) = (1 - 2^(1-m)) zeta(m), zeta(m) = (-1)^(m/2+1) B_m (2 pi)^m / (2 m!).
    m = 0 gives the analytically continued value eta(0) = 1/2.
    """
    if not isinstance(m, int) or m < 0 or m % 2:
        raise DomainError(f"dirichlet_eta_even needs an even m >= 0, got {m!r}")
    if m == 0:
        return Fraction(1, 2)
    zeta = (-1) ** (m // 2 + 1) * bernoulli(m) * Fraction(2**m, 2 * math.factorial(m))
    return (1 - Fraction(2, 2**m)) * zeta


def dirichlet_eta_even(m: int) -> float:
    r = dirichlet_eta_even_exact(m)
    if m == 0:
        return 0.5
    return math.exp(math.log(r.numerator) - math.log(r.denominator) + m * math.log(math.pi))


# ---------------------------------------------------------------------------
# Spectral eigen-sum oracle for the disk and the 3-ball
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralMode:
    eigenvalue: float
    weight: float


@dataclass(frozen=True)
class SpectralSum:
    value: float
    tail_bound: float
    modes: int
    weight_sum: float


def spectral_modes(d: int, R: float, count: int) -> list:
    """Rotation-invariant Dirichlet modes of the d-ball that the constant function sees.

    d = 2: lambda_k = (j_{0,k}/R)^2, gamma_k^2 = 4/j_{0,k}^2.

    d = 3: the radial modes are phi_k = sin(k pi r/R) / (r sqrt(2 pi R)),
    normalised since 4 pi int_0^R sin^2(k pi r/R) dr = 2 pi R. Their overlap
    with the constant is gamma_k = |Omega|^(-1/2) 4 pi int_0^R r sin(k pi r/R)
    dr / sqrt(2 pi R), and int_0^R r sin(k pi r/R) dr = (-1)^(k+1) R^2/(k pi),
    so gamma_k^2 = 3/(4 pi R^3) * 16 pi^2 R^4/(k pi)^2 / (2 pi R) = 6/(k pi)^2
    with lambda_k = (k pi/R)^2.
    """
    if count < 1:
        raise DomainError("need at least one mode")
    if d == 2:
        return [SpectralMode((j / R) ** 2, 4.0 / (j * j)) for j in bessel_j0_zeros(count)]
    if d == 3:
        return [
            SpectralMode((k * math.pi / R) ** 2, 6.0 / (k * math.pi) ** 2) for k in range(1, count + 1)
        ]
    raise DomainError(f"spectral oracle supports d = 2 or 3, got {d}")


def spectral_sum_oracle(d: int, s: float, R: float, modes: int) -> SpectralSum:
    """sum_k gamma_k^2/(s^2 + lambda_k) over the first ``modes`` modes, plus a tail bound.

    The tail is bounded by sum_{k>M} gamma_k^2/lambda_k, summed in closed form
    against an integral: 2R^2/(pi^4 M^3) for d = 3, and, using
    j_{0,k} > (k - 1/4) pi, 4R^2/(3 pi^4 (M - 1/4)^3) for d = 2.
    """
    if s <= 0 or R <= 0:
        raise DomainError("spectral oracle needs s > 0 and R > 0")
    mode_list = spectral_modes(d, R, modes)
    value = math.fsum(m.weight / (s * s + m.eigenvalue) for m in mode_list)
    weight_sum = math.fsum(m.weight for m in mode_list)
    if d == 3:
        tail = 2.0 * R * R / (math.pi**4 * modes**3)
    else:
        tail = 4.0 * R * R / (3.0 * math.pi**4 * (modes - 0.25) ** 3)
    return SpectralSum(value, tail, modes, weight_sum)


# ---------------------------------------------------------------------------
# Taylor coefficients by contour integration
# ---------------------------------------------------------------------------


def taylor_coefficients(f: Callable, count: int, radius: float, points: int = 64) -> np.ndarray:
    """First ``count`` Taylor coefficients of f at 0 from samples on |z| = radius.

    Trapezoidal rule on the circle (an FFT); the aliasing error is of order
    (radius/rho)^points where rho is the distance to the nearest singularity.
    """
    if points < 2 * count:
        raise DomainError("need at least 2*count sample points")
    z = radius * np.exp(2j * np.pi * np.arange(points) / points)
    values = np.array([f(complex(zk)) for zk in z], dtype=complex)
    coeffs = np.fft.fft(values) / points
    return coeffs[:count] / radius ** np.arange(count)


def stable_cmath_tanh(w: complex) -> complex:
    """tanh for complex arguments without overflow at large real part."""
    if w.real > 20:
        e = cmath.exp(-2 * w)
        return (1 - e) / (1 + e)
    if w.real < -20:
        e = cmath.exp(2 * w)
        return -(1 - e) / (1 + e)
    return cmath.tanh(w)
