"""Exact arithmetic substrate: rationals, truncated series in v = 1/u, polynomials.

Rationals are :class:`fractions.Fraction` throughout. A series is always
carried together with its truncation order, and every operation refuses to
produce coefficients its inputs cannot determine.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, NonInvertibleSeriesError, TruncationMismatchError

__all__ = [
    "Fraction",
    "AsymptoticSeries",
    "PolyV",
    "series_ratio",
    "bernoulli",
    "bessel_asymptotic_coeff",
    "bessel_asymptotic_series",
    "gamma_half_over_sqrt_pi",
    "parse_rational",
    "rational_to_str",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an integer string) into a Fraction.

    Floats are rejected on purpose; exact paths must never see them.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise DomainError("float given where an exact rational 'p/q' is required")
    s = str(text).strip()
    if "." in s or "e" in s.lower():
        raise DomainError(f"{text!r} is not an exact rational; write it as 'p/q'")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational {text!r}") from exc


def rational_to_str(x: Fraction) -> str:
    """Lowest-terms ``"p/q"`` string; integers print without a denominator."""
    return str(Fraction(x))


def _as_fraction_tuple(values: Iterable) -> tuple:
    return tuple(Fraction(c) for c in values)


@dataclass(frozen=True)
class AsymptoticSeries:
    """Truncated formal series sum_j c_j v^j, known exactly up to v^N."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = _as_fraction_tuple(self.coefficients)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_list(cls, values: Sequence, truncation_order: int | None = None) -> "AsymptoticSeries":
        values = list(values)
        if truncation_order is None:
            truncation_order = len(values) - 1
        values = values[: truncation_order + 1]
        values += [0] * (truncation_order + 1 - len(values))
        return cls(tuple(values))

    @classmethod
    def constant(cls, value, truncation_order: int) -> "AsymptoticSeries":
        return cls.from_list([value], truncation_order)

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, j: int) -> Fraction:
        if j < 0:
            raise IndexError(j)
        if j > self.truncation_order:
            raise TruncationMismatchError(
                f"coefficient v^{j} requested from a series truncated at v^{self.truncation_order}"
            )
        return self.coefficients[j]

    def __len__(self):
        return len(self.coefficients)

    def truncate(self, order: int) -> "AsymptoticSeries":
        if order > self.truncation_order:
            raise TruncationMismatchError(
                f"cannot extend a series known to v^{self.truncation_order} up to v^{order}"
            )
        return AsymptoticSeries(self.coefficients[: order + 1])

    def _common(self, other: "AsymptoticSeries") -> int:
        return min(self.truncation_order, other.truncation_order)

    def __add__(self, other):
        if not isinstance(other, AsymptoticSeries):
            other = AsymptoticSeries.constant(other, self.truncation_order)
        n = self._common(other)
        return AsymptoticSeries(tuple(self.coefficients[j] + other.coefficients[j] for j in range(n + 1)))

    __radd__ = __add__

    def __neg__(self):
        return AsymptoticSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AsymptoticSeries):
            f = Fraction(other)
            return AsymptoticSeries(tuple(f * c for c in self.coefficients))
        n = self._common(other)
        a, b = self.coefficients, other.coefficients
        out = [sum((a[i] * b[j - i] for i in range(j + 1)), Fraction(0)) for j in range(n + 1)]
        return AsymptoticSeries(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "AsymptoticSeries":
        """Multiply by v^k (k >= 0); the truncation order grows by k."""
        if k < 0:
            raise ValueError("shift only by non-negative powers")
        return AsymptoticSeries((Fraction(0),) * k + self.coefficients)

    def derivative(self) -> "AsymptoticSeries":
        """d/dv; loses one order of truncation."""
        if self.truncation_order == 0:
            raise TruncationMismatchError("derivative of a series known only to v^0")
        return AsymptoticSeries(tuple(j * self.coefficients[j] for j in range(1, len(self.coefficients))))

    def integral(self) -> "AsymptoticSeries":
        """Antiderivative in v with zero constant; gains one order."""
        return AsymptoticSeries((Fraction(0),) + tuple(c / (j + 1) for j, c in enumerate(self.coefficients)))

    def log(self) -> "AsymptoticSeries":
        """ln of a series with constant term 1, via integral of A'/A."""
        if self.coefficients[0] != 1:
            raise DomainError("series logarithm needs constant term 1")
        if self.truncation_order == 0:
            return AsymptoticSeries((Fraction(0),))
        d = self.derivative()
        return series_ratio(d, self.truncate(d.truncation_order), d.truncation_order).integral()

    def __call__(self, v):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * v + c
        return acc

    def to_json(self) -> str:
        return json.dumps(
            {
                "coefficients": [rational_to_str(c) for c in self.coefficients],
                "truncation_order": self.truncation_order,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "AsymptoticSeries":
        data = json.loads(text)
        coeffs = [parse_rational(c) for c in data["coefficients"]]
        if len(coeffs) != data["truncation_order"] + 1:
            raise TruncationMismatchError("coefficient count disagrees with truncation_order")
        return cls(tuple(coeffs))


def series_ratio(numer: AsymptoticSeries, denom: AsymptoticSeries, order: int) -> AsymptoticSeries:
    """Truncated quotient numer/denom through v^order, exact."""
    if order > min(numer.truncation_order, denom.truncation_order):
        raise TruncationMismatchError(
            f"order {order} exceeds input truncation "
            f"({numer.truncation_order}, {denom.truncation_order})"
        )
    d0 = denom.coefficients[0]
    if d0 == 0:
        raise NonInvertibleSeriesError("non-invertible series: zero constant term in the denominator")
    a, b = numer.coefficients, denom.coefficients
    q: list = []
    for k in range(order + 1):
        acc = a[k]
        for i in range(max(0, k - len(b) + 1), k):
            acc -= q[i] * b[k - i]
        q.append(acc / d0)
    return AsymptoticSeries(tuple(q))


@dataclass(frozen=True)
class PolyV:
    """Polynomial in v with exact coefficients, ascending powers."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = list(_as_fraction_tuple(self.coefficients))
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        if self.is_zero():
            return -1
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    def __call__(self, v):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * v + c
        return acc

    def to_series(self, order: int) -> AsymptoticSeries:
        return AsymptoticSeries.from_list(self.coefficients, order)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return math.sqrt(sum(float(c) ** 2 for c in self.coefficients))

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            terms.append(f"{c}" if j == 0 else f"({c})*v^{j}")
        return " + ".join(terms) or "0"


# Bernoulli numbers B_0..B_max, B_1 = -1/2 convention (only even ones are exposed).
_BERNOULLI: list = [Fraction(1)]
BERNOULLI_CACHE_MAX = 120


def _extend_bernoulli(k: int) -> None:
    for m in range(len(_BERNOULLI), k + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (m + 1))


_extend_bernoulli(BERNOULLI_CACHE_MAX)


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k for even k >= 2 (B_2 = 1/6)."""
    if not isinstance(k, int) or k < 2 or k % 2:
        raise DomainError(f"bernoulli needs an even integer k >= 2, got {k!r}")
    if k >= len(_BERNOULLI):
        _extend_bernoulli(k)
    return _BERNOULLI[k]


def bessel_asymptotic_coeff(two_nu: int, j: int) -> Fraction:
    """Coefficient of u^-j in e^-u sqrt(2 pi u) I_nu(u) for large u, nu = two_nu/2.

    Equal to (-1)^j Gamma(nu+j+1/2) / (2^j j! Gamma(nu-j+1/2)). The Gamma
    ratio telescopes into the product of the 2j factors nu-j+1/2, ...,
    nu+j-1/2, so it is rational for every integer or half-integer nu. For
    half-integer nu one of those factors is zero once j > nu - 1/2, which is
    exactly where the expansion terminates.
    """
    if two_nu < -1:
        raise DomainError(f"two_nu must be >= -1, got {two_nu}")
    if j < 0:
        raise DomainError(f"j must be >= 0, got {j}")
    nu = Fraction(two_nu, 2)
    start = nu - j + Fraction(1, 2)
    prod = Fraction(1)
    for i in range(2 * j):
        prod *= start + i
        if prod == 0:
            return Fraction(0)
    return (-1) ** j * prod / (2**j * math.factorial(j))


def bessel_asymptotic_series(two_nu: int, order: int) -> AsymptoticSeries:
    """The bracketed large-u series of I_nu as an AsymptoticSeries through v^order."""
    return AsymptoticSeries(tuple(bessel_asymptotic_coeff(two_nu, j) for j in range(order + 1)))


def gamma_half_over_sqrt_pi(k: int) -> Fraction:
    """Gamma(k + 1/2)/sqrt(pi) as an exact rational, for any integer k."""
    if k >= 0:
        return Fraction(math.factorial(2 * k), 4**k * math.factorial(k))
    # Gamma(1/2 - j) Gamma(1/2 + j) = (-1)^j pi
    j = -k
    return (-1) ** j / gamma_half_over_sqrt_pi(j)
