"""Weyl coefficients of the heat content of d-dimensional balls.

With u = R s the Laplace-transformed heat content of the d-ball is
s^2 H(s) = I_{d/2+1}(u) / I_{d/2-1}(u). The e^u/sqrt(2 pi u) prefactors of
the two large-u expansions cancel, so s^2 H is a ratio of two formal series
in v = 1/u and the dimensionless Weyl coefficient c_hat_n = c_n R^(n-2) is
the coefficient of v^(n-2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .exact import (
    AsymptoticSeries,
    bernoulli,
    bessel_asymptotic_series,
    gamma_half_over_sqrt_pi,
    rational_to_str,
    series_ratio,
)
from .numerics import bessel_i

__all__ = [
    "WeylTable",
    "AsymptoticPrediction",
    "ball_weyl_coefficients",
    "ball_weyl_via_logderivative",
    "even_d_prediction",
    "even_d_asymptotic_cn",
    "log_abs",
    "ratio_to_prediction",
    "hyp3f2_terminating",
    "pochhammer_sum_side",
    "hypergeometric_side",
    "ball_heat_transform",
]

DEFAULT_MAX_N = 80


@dataclass(frozen=True)
class WeylTable:
    """Dimensionless Weyl coefficients c_hat_n = c_n L^(n-2), n = 2, 3, ..."""

    domain_tag: str
    length_unit: str
    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for i, (n, _) in enumerate(self.entries):
            if n != i + 2:
                raise ValueError("Weyl table entries must run consecutively from n = 2")

    @property
    def max_n(self) -> int:
        return self.entries[-1][0]

    def __getitem__(self, n: int) -> Fraction:
        if n < 2 or n > self.max_n:
            raise KeyError(n)
        return self.entries[n - 2][1]

    def values(self) -> list:
        return [c for _, c in self.entries]

    def rows(self, dimension: int | None = None) -> list:
        """CSV rows n, c_hat_exact, c_hat_float, prediction, ratio.

        The prediction columns are filled for even dimensions and n >= 5.
        """
        out = []
        for n, c in self.entries:
            pred = ratio = ""
            if dimension is not None and dimension % 2 == 0 and n >= 5:
                p = even_d_asymptotic_cn(dimension, n)
                pred = repr(p)
                ratio = repr(ratio_to_prediction(c, dimension, n))
            out.append([str(n), rational_to_str(c), repr(_to_float(c)), pred, ratio])
        return out

    def to_dict(self) -> dict:
        return {
            "domain": self.domain_tag,
            "length_unit": self.length_unit,
            "entries": [{"n": n, "c_hat": rational_to_str(c)} for n, c in self.entries],
        }


def _to_float(x: Fraction) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.copysign(math.inf, x)


@dataclass(frozen=True)
class AsymptoticPrediction:
    """c_hat_n ~ alpha [Gamma(n - beta + 1) + subleading_factor Gamma(n - beta)] / (length/R)^(n-2)."""

    alpha: float
    beta: float
    length: float
    subleading_factor: float


def ball_weyl_coefficients(d: int, max_n: int = DEFAULT_MAX_N) -> WeylTable:
    """Exact c_hat_n for 2 <= n <= max_n from the ratio of the two Bessel expansions."""
    if d < 1:
        raise DomainError(f"ball dimension must be >= 1, got {d}")
    if max_n < 2:
        raise DomainError(f"max_n must be >= 2, got {max_n}")
    order = max_n - 2
    numer = bessel_asymptotic_series(d + 2, order)
    denom = bessel_asymptotic_series(d - 2, order)
    q = series_ratio(numer, denom, order)
    return WeylTable(f"ball:d={d}", "R", tuple((j + 2, c) for j, c in enumerate(q.coefficients)))


def ball_weyl_via_logderivative(d: int, max_n: int = DEFAULT_MAX_N) -> WeylTable:
    """Same table through s^2 H = 1 + d(d-2)/(2u^2) - (d/u) d/du ln I_{d/2-1}(u).

    With ln I = u - ln(2 pi u)/2 + ln A(v), A the bracketed series, and
    d/du = -v^2 d/dv this becomes 1 - d v + (d(d-2)/2 + d/2) v^2 + d v^3 (ln A)'(v).
    """
    if d < 2 or d % 2:
        raise DomainError(f"log-derivative route needs even d >= 2, got {d}")
    if max_n < 2:
        raise DomainError(f"max_n must be >= 2, got {max_n}")
    order = max_n - 2
    inner = max(order - 2, 1)
    log_a = bessel_asymptotic_series(d - 2, inner).log()
    tail = log_a.derivative().shift(3) * d
    head = AsymptoticSeries.from_list([1, -d, Fraction(d * (d - 2), 2) + Fraction(d, 2)], max(order, 2))
    if tail.truncation_order < order:
        raise AssertionError("internal truncation bookkeeping")
    total = (head + tail).truncate(order)
    return WeylTable(f"ball:d={d}", "R", tuple((j + 2, c) for j, c in enumerate(total.coefficients)))


def even_d_prediction(d: int) -> AsymptoticPrediction:
    if d < 2 or d % 2:
        raise DomainError(f"the Gamma-law prediction applies to even d only, got {d}")
    sign = (-1) ** (d // 2 - 1)
    return AsymptoticPrediction(
        alpha=sign * 4.0 * d / math.pi,
        beta=4.0,
        length=2.0,
        subleading_factor=(d - 1) * (d - 3) / 2.0,
    )


def _log_even_d_prediction(d: int, n: int) -> tuple:
    """(sign, log|prediction|) of the two-term Gamma law."""
    p = even_d_prediction(d)
    if n <= 4:
        raise DomainError(f"the Gamma-law prediction needs n >= 5, got {n}")
    # Gamma(n-3) + k Gamma(n-4) = Gamma(n-4) (n - 4 + k)
    bracket = (n - 4) + p.subleading_factor
    log_mag = (
        math.log(abs(p.alpha))
        + math.lgamma(n - 4)
        + math.log(abs(bracket))
        - (n - 2) * math.log(p.length)
    )
    sign = math.copysign(1.0, p.alpha) * math.copysign(1.0, bracket)
    return sign, log_mag


def even_d_asymptotic_cn(d: int, n: int) -> float:
    """(-1)^(d/2-1) (4d/pi) 2^-(n-2) [Gamma(n-3) + (d-1)(d-3)/2 Gamma(n-4)], R = 1."""
    sign, log_mag = _log_even_d_prediction(d, n)
    return sign * math.exp(log_mag)


def log_abs(x: Fraction) -> float:
    """log|x| for an exact rational of any size."""
    if x == 0:
        return -math.inf
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def ratio_to_prediction(c_hat: Fraction, d: int, n: int) -> float:
    """c_hat_n / prediction, formed in log space so neither side has to fit a double."""
    sign, log_pred = _log_even_d_prediction(d, n)
    if c_hat == 0:
        return 0.0
    return math.copysign(1.0, c_hat) * sign * math.exp(log_abs(c_hat) - log_pred)


def hyp3f2_terminating(n: int) -> Fraction:
    """3F2(1/2, 1/2, -n; 1/2-n, 1/2-n; -1) as the exact finite sum over k = 0..n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    half = Fraction(1, 2)
    term = Fraction(1)
    total = Fraction(0)
    for k in range(n + 1):
        total += term
        if k == n:
            break
        term *= (half + k) ** 2 * (-n + k) * -1
        term /= (half - n + k) ** 2 * (k + 1)
    return total


def pochhammer_sum_side(n: int) -> Fraction:
    """sum_{k=1}^{n-1} Gamma^2(k+1/2) Gamma^2(n-k+1/2) / (k! (n-k)!), as a multiple of pi^2."""
    total = Fraction(0)
    for k in range(1, n):
        a = gamma_half_over_sqrt_pi(k)
        b = gamma_half_over_sqrt_pi(n - k)
        total += (a * a) * (b * b) / (math.factorial(k) * math.factorial(n - k))
    return total


def hypergeometric_side(n: int) -> Fraction:
    """pi (F(n) - 2) Gamma^2(n+1/2)/Gamma(n+1), as a multiple of pi^2.

    Together with :func:`pochhammer_sum_side` this is the closed form of the
    Sigma^2 contribution to the subleading d = 2 coefficient.
    """
    g = gamma_half_over_sqrt_pi(n)
    return (hyp3f2_terminating(n) - 2) * g * g / math.factorial(n)


def _small_u_coefficients(kind: str, count: int = 30) -> list:
    # s^2 H as a power series in u^2 from u coth u and tanh(u)/u (Bernoulli numbers)
    out = []
    for k in range(2, count + 2):
        c = Fraction(4**k, math.factorial(2 * k)) * bernoulli(2 * k)
        if kind == "tanh":
            c *= 4**k - 1
        else:
            c *= 3
        out.append(-float(c))
    return out


_SMALL_U = {}


def _small_u_series(kind: str, u: float) -> float:
    coeffs = _SMALL_U.get(kind)
    if coeffs is None:
        coeffs = _SMALL_U[kind] = _small_u_coefficients(kind)
    x = u * u
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc * x


def ball_heat_transform(d: int, s: float, R: float = 1.0) -> float:
    """Closed-form H(s) of the d-ball for d = 1, 2, 3 (floating point).

    d = 1: (1 - tanh(u)/u)/s^2; d = 2: I_2(u)/(s^2 I_0(u));
    d = 3: (1 - (3/u)(coth u - 1/u))/s^2. For small u the d = 1 and d = 3
    brackets come from their Bernoulli series, which avoids the cancellation.
    """
    if s <= 0 or R <= 0:
        raise DomainError("need s > 0 and R > 0")
    u = R * s
    if d == 1:
        if u < 0.8:
            return _small_u_series("tanh", u) / (s * s)
        return (1.0 - math.tanh(u) / u) / (s * s)
    if d == 2:
        return bessel_i(2, u, scaled=True) / (bessel_i(0, u, scaled=True) * s * s)
    if d == 3:
        if u < 1.5:
            return _small_u_series("coth", u) / (s * s)
        return (1.0 - 3.0 / u * (1.0 / math.tanh(u) - 1.0 / u)) / (s * s)
    raise DomainError(f"closed form implemented for d = 1, 2, 3; got {d}")
