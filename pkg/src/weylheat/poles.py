"""Odd-dimensional balls: terminating expansions, rational forms and their poles.

For odd d both Bessel expansions terminate, so s^2 H(s) is (up to
exponentially small terms) a ratio of two polynomials in v = 1/(R s).
The large-n behaviour of c_hat_n is then governed by the roots of the
denominator rather than by a Gamma function.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .ball import WeylTable
from .errors import DomainError
from .exact import PolyV, bessel_asymptotic_coeff, series_ratio
from .numerics import polynomial_roots

__all__ = [
    "RationalForm",
    "ComplexRoot",
    "odd_d_rational_form",
    "weyl_from_rational_form",
    "poles",
    "d7_closed_form_cn",
    "dominant_length",
    "partial_fraction_cn",
    "growth_rate",
    "DEFAULT_PRECISION_DIGITS",
]

log = logging.getLogger(__name__)

DEFAULT_PRECISION_DIGITS = 12
TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class RationalForm:
    numerator: PolyV
    denominator: PolyV
    dimension: int


@dataclass(frozen=True)
class ComplexRoot:
    re: float
    im: float

    @property
    def modulus(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def phase_over_pi(self) -> float:
        return math.atan2(self.im, self.re) / math.pi

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


def _terminating_poly(two_nu: int) -> PolyV:
    # half-integer nu: the expansion stops at j = nu - 1/2
    top = max(0, (two_nu - 1) // 2)
    return PolyV(tuple(bessel_asymptotic_coeff(two_nu, j) for j in range(top + 1)))


def odd_d_rational_form(d: int) -> RationalForm:
    """Numerator/denominator polynomials of s^2 H for the odd d-ball.

    d = 1 comes out as (1 - v, 1) through the same path, since the
    expansion of I_{-1/2} is the constant 1.
    """
    if d < 1 or d % 2 == 0:
        raise DomainError(f"odd_d_rational_form needs odd d >= 1, got {d}")
    return RationalForm(_terminating_poly(d + 2), _terminating_poly(d - 2), d)


def weyl_from_rational_form(form: RationalForm, max_n: int) -> WeylTable:
    """Expand numerator/denominator in v and read off c_hat_n = [v^(n-2)]."""
    if max_n < 2:
        raise DomainError(f"max_n must be >= 2, got {max_n}")
    order = max_n - 2
    q = series_ratio(form.numerator.to_series(order), form.denominator.to_series(order), order)
    return WeylTable(
        f"ball:d={form.dimension}", "R", tuple((j + 2, c) for j, c in enumerate(q.coefficients))
    )


def poles(form: RationalForm, precision_digits: int = DEFAULT_PRECISION_DIGITS) -> list:
    """All roots of the denominator in the v-plane (R = 1), ascending modulus.

    Conjugates below the real axis are included. A constant denominator has
    no poles and yields an empty list.
    """
    den = form.denominator
    if den.degree < 1:
        return []
    roots = polynomial_roots([float(c) for c in den.coefficients], precision_digits)
    out = []
    for z in roots:
        im = z.imag
        # real-coefficient polynomial: clean up numerically real roots
        if abs(im) <= 10.0 ** (-precision_digits) * max(1.0, abs(z)):
            im = 0.0
        out.append(ComplexRoot(z.real, im))
    out.sort(key=lambda r: (round(r.modulus, 12), -r.im))
    return out


def d7_closed_form_cn(n: int) -> float:
    """7 * 3^(n/2 - 2) [cos(n pi/6) - sqrt(3) sin(n pi/6)], R = 1, n >= 5."""
    if n < 5:
        raise DomainError(f"closed form holds for n >= 5, got {n}")
    return 7.0 * 3.0 ** (n / 2.0 - 2.0) * (math.cos(n * math.pi / 6.0) - math.sqrt(3.0) * math.sin(n * math.pi / 6.0))


def dominant_length(d: int, precision_digits: int = DEFAULT_PRECISION_DIGITS) -> float:
    """|v_1| of the minimal-modulus denominator root (units R = 1).

    Several non-conjugate roots sharing the minimal modulus within 1e-9 are
    reported as a tie through the module logger.
    """
    if d < 5 or d % 2 == 0:
        raise DomainError(f"no poles: dominant_length needs odd d >= 5, got {d}")
    roots = poles(odd_d_rational_form(d), precision_digits)
    smallest = roots[0].modulus
    tied = [r for r in roots if abs(r.modulus - smallest) <= TIE_TOLERANCE]
    upper = {(round(r.re, 9), round(abs(r.im), 9)) for r in tied}
    if len(upper) > 1:
        log.warning("d=%d: %d distinct roots tie for minimal modulus %.12f", d, len(upper), smallest)
    return smallest


def partial_fraction_cn(form: RationalForm, n: int, precision_digits: int = DEFAULT_PRECISION_DIGITS) -> complex:
    """c_hat_n from the pole expansion of numerator/denominator (simple poles).

    1/Q(v) = sum_m 1/(Q'(v_m)(v - v_m)) = -sum_m sum_k v^k / (Q'(v_m) v_m^(k+1)),
    and the numerator shifts the index. Used as an independent check of the
    exact series for large n.
    """
    roots = [r.value for r in poles(form, precision_digits)]
    den = [complex(float(c)) for c in form.denominator.coefficients]
    num = [float(c) for c in form.numerator.coefficients]

    def dq(v):
        return sum(k * den[k] * v ** (k - 1) for k in range(1, len(den)))

    j = n - 2
    total = 0j
    for i, a in enumerate(num):
        k = j - i
        if k < 0:
            continue
        total += a * sum(-1.0 / (dq(vm) * vm ** (k + 1)) for vm in roots)
    return total


def growth_rate(table: WeylTable, n: int) -> float:
    """|c_hat_n|^(1/n)."""
    c = table[n]
    if c == 0:
        return 0.0
    return math.exp((math.log(abs(c.numerator)) - math.log(c.denominator)) / n)
