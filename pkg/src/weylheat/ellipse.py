"""Small-s expansion of the heat content of an ellipse.

Writing the local transform as sum_j H_j(z, zbar) s^(2j) turns the governing
equation into the chain 4 d_z d_zbar H_0 = -1, 4 d_z d_zbar H_j = H_{j-1}.
Every order is a polynomial in (z, zbar): a double antiderivative of the
previous order plus harmonic terms h_k (z^2k + zbar^2k). On the boundary
z = a cos t + i b sin t = alpha w + beta/w with w = e^{it},
alpha = (a+b)/2, beta = (a-b)/2, each order restricts to a Laurent
polynomial in w; the h_k are fixed by killing its even Fourier modes
0, 2, ..., 2(j+1), and every remaining mode is then checked to be zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath

from .errors import DegenerateEllipseError, DomainError
from .exact import parse_rational

__all__ = [
    "EllipseParams",
    "NumericEllipse",
    "EllipsePoly",
    "laplacian",
    "boundary_fourier",
    "solve_order",
    "ellipse_average",
    "small_s_coefficients",
    "solve_orders",
    "closed_form_small_s",
    "PROLATE_TWO_TERM",
    "prolate_two_term",
    "small_s_transform",
    "DEFAULT_ORDERS",
]

DEFAULT_ORDERS = 6


@dataclass(frozen=True)
class EllipseParams:
    """Semi-axes a >= b > 0, exact rationals."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a = parse_rational(self.a)
        b = parse_rational(self.b)
        if not (b > 0):
            raise DomainError(f"minor semi-axis must be positive, got b={b}")
        if a < b:
            raise DomainError(f"need a >= b, got a={a}, b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def eccentricity_squared(self) -> Fraction:
        return 1 - (self.b / self.a) ** 2

    @cached_property
    def _boundary(self) -> "_BoundaryExpansion":
        return _BoundaryExpansion((self.a + self.b) / 2, (self.a - self.b) / 2, Fraction(0))


class NumericEllipse:
    """Semi-axes as mpmath floats at a fixed working precision.

    Runs the same recursion as the exact path; used where the axes are
    irrational or the rational heights would grow too fast. The boundary
    residual check becomes a relative tolerance.
    """

    def __init__(self, a, b, dps: int = 50):
        self.ctx = mpmath.mp.clone()
        self.ctx.dps = dps
        a = self.ctx.mpf(a)
        b = self.ctx.mpf(b)
        if not b > 0:
            raise DomainError(f"minor semi-axis must be positive, got b={b}")
        if a < b:
            a, b = b, a
        self.a = a
        self.b = b
        self.dps = dps
        self._boundary = _BoundaryExpansion((a + b) / 2, (a - b) / 2, self.ctx.mpf(0))

    @property
    def residual_tolerance(self):
        return self.ctx.mpf(10) ** (10 - self.dps)


class _BoundaryExpansion:
    """Laurent expansions of z^p zbar^q on the boundary z = alpha w + beta/w.

    z^p restricts to sum_i C(p,i) alpha^(p-i) beta^i w^(p-2i) and zbar^q to
    the same list read with w -> 1/w. Products are cached per (p, q).
    """

    def __init__(self, alpha, beta, zero):
        self.alpha = alpha
        self.beta = beta
        self.zero = zero
        self._powers: list = [[zero + 1]]
        self._monomials: dict = {}

    def power(self, p: int) -> list:
        while len(self._powers) <= p:
            prev = self._powers[-1]
            # multiply by (alpha w + beta/w); index i <-> w^(n-2i)
            nxt = [self.zero] * (len(prev) + 1)
            for i, c in enumerate(prev):
                nxt[i] += self.alpha * c
                nxt[i + 1] += self.beta * c
            self._powers.append(nxt)
        return self._powers[p]

    def monomial(self, p: int, q: int) -> list:
        """Coefficients of w^(p+q-2m), m = 0..p+q, for z^p zbar^q."""
        key = (p, q)
        got = self._monomials.get(key)
        if got is not None:
            return got
        ep = self.power(p)
        eq = self.power(q)
        out = [self.zero] * (p + q + 1)
        # w^(p-2i) * w^(2k-q) = w^(p+q-2(i-k+q))
        for i, ci in enumerate(ep):
            if ci == 0:
                continue
            for k, ck in enumerate(eq):
                if ck != 0:
                    out[i + q - k] += ci * ck
        self._monomials[key] = out
        return out


@dataclass(frozen=True)
class EllipsePoly:
    """sum c_pq z^p zbar^q; real valued iff c_pq = c_qp."""

    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v for k, v in self.coefficients.items() if v != 0}
        object.__setattr__(self, "coefficients", clean)

    @property
    def max_total_degree(self) -> int:
        return max((p + q for p, q in self.coefficients), default=0)

    def __getitem__(self, key):
        return self.coefficients.get(key, 0)

    def is_real(self) -> bool:
        return all(self[(q, p)] == c for (p, q), c in self.coefficients.items())

    def __eq__(self, other):
        if not isinstance(other, EllipsePoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __call__(self, z: complex):
        zb = z.conjugate()
        return sum(float(c) * z**p * zb**q for (p, q), c in self.coefficients.items())


def laplacian(poly: EllipsePoly) -> EllipsePoly:
    """4 d_z d_zbar, term by term."""
    out: dict = {}
    for (p, q), c in poly.coefficients.items():
        if p and q:
            out[(p - 1, q - 1)] = out.get((p - 1, q - 1), 0) + 4 * p * q * c
    return EllipsePoly(out)


def _particular(rhs: EllipsePoly) -> dict:
    # z^p zbar^q = 4 d_z d_zbar [z^(p+1) zbar^(q+1) / (4 (p+1)(q+1))]
    return {(p + 1, q + 1): c / (4 * (p + 1) * (q + 1)) for (p, q), c in rhs.coefficients.items()}


def boundary_fourier(poly: EllipsePoly, params) -> dict:
    """Fourier coefficients {k: c_k} of poly restricted to the boundary, w = e^{ikt}."""
    bnd = params._boundary
    acc: dict = {}
    for (p, q), c in poly.coefficients.items():
        for m, v in enumerate(bnd.monomial(p, q)):
            if v != 0:
                k = p + q - 2 * m
                acc[k] = acc.get(k, 0) + c * v
    return {k: v for k, v in acc.items() if v != 0}


def _solve_linear(matrix: list, rhs: list) -> list:
    n = len(rhs)
    m = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[pivot][col] == 0:
            raise DegenerateEllipseError("degenerate ellipse: singular boundary system")
        m[col], m[pivot] = m[pivot], m[col]
        piv = m[col][col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / piv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _check_residual(residual: dict, sol: EllipsePoly, params, j: int) -> None:
    if isinstance(params, NumericEllipse):
        scale = max((abs(c) for c in sol.coefficients.values()), default=1)
        tol = params.residual_tolerance * max(scale, 1) * (params.a ** sol.max_total_degree)
        residual = {k: v for k, v in residual.items() if abs(v) > tol}
    if residual:
        worst = max(residual, key=lambda k: abs(residual[k]))
        raise DegenerateEllipseError(
            f"order {j}: {len(residual)} boundary modes survive (e.g. mode {worst}); "
            "the harmonic basis is insufficient"
        )


def solve_order(params, j: int, previous: EllipsePoly | None) -> EllipsePoly:
    """Order-j polynomial: Laplacian equals -1 (j = 0) or the previous order, zero on the boundary."""
    if j < 0:
        raise DomainError(f"order must be >= 0, got {j}")
    zero = params._boundary.zero
    if j == 0:
        if previous is not None:
            raise DomainError("order 0 takes no previous solution")
        rhs = EllipsePoly({(0, 0): zero - 1})
    else:
        if previous is None:
            raise DomainError(f"order {j} needs the order-{j - 1} solution")
        rhs = previous
    part = EllipsePoly(_particular(rhs))
    n_modes = part.max_total_degree // 2

    # kill the even modes 0, 2, ..., 2 n_modes with h_0 + sum_k h_k (z^2k + zbar^2k)
    fourier_part = boundary_fourier(part, params)
    basis = [{0: zero + 1}]
    for k in range(1, n_modes + 1):
        basis.append(boundary_fourier(EllipsePoly({(2 * k, 0): zero + 1, (0, 2 * k): zero + 1}), params))
    modes = [2 * m for m in range(n_modes + 1)]
    matrix = [[basis[k].get(mode, zero) for k in range(n_modes + 1)] for mode in modes]
    rhs_vec = [-fourier_part.get(mode, zero) for mode in modes]
    h = _solve_linear(matrix, rhs_vec)

    coeffs = dict(part.coefficients)
    coeffs[(0, 0)] = coeffs.get((0, 0), zero) + h[0]
    for k in range(1, n_modes + 1):
        for key in ((2 * k, 0), (0, 2 * k)):
            coeffs[key] = coeffs.get(key, zero) + h[k]
    sol = EllipsePoly(coeffs)
    _check_residual(boundary_fourier(sol, params), sol, params, j)
    return sol


def ellipse_average(poly: EllipsePoly, params):
    """Mean of poly over the ellipse interior.

    With x = a r cos t, y = b r sin t the monomial z^p zbar^q is r^(p+q)
    times its boundary restriction, so the mean is 2/(p+q+2) times the
    w^0 coefficient.
    """
    bnd = params._boundary
    total = bnd.zero
    for (p, q), c in poly.coefficients.items():
        if (p - q) % 2:
            continue
        total += c * bnd.monomial(p, q)[(p + q) // 2] * 2 / (p + q + 2)
    return total


def solve_orders(params, J: int) -> list:
    """[H_0(z, zbar), ..., H_J(z, zbar)]."""
    if J < 0:
        raise DomainError(f"J must be >= 0, got {J}")
    out = []
    prev = None
    for j in range(J + 1):
        prev = solve_order(params, j, prev)
        out.append(prev)
    return out


def small_s_coefficients(params, J: int = DEFAULT_ORDERS) -> list:
    """Domain averages [H_0, ..., H_J]; H_j carries length^(2j+2).

    Exact Fractions for :class:`EllipseParams`, mpmath floats for
    :class:`NumericEllipse`.
    """
    return [ellipse_average(p, params) for p in solve_orders(params, J)]


def closed_form_small_s(params: EllipseParams, j: int) -> Fraction:
    """The closed forms of the first four averaged orders, for comparison."""
    a2, b2 = params.a**2, params.b**2
    ab2 = a2 * b2
    s2 = a2 + b2
    q4 = a2 * a2 + b2 * b2
    if j == 0:
        return ab2 / (4 * s2)
    if j == 1:
        return -(ab2**2) / (12 * s2**2)
    if j == 2:
        return ab2**3 * (17 * q4 + 98 * ab2) / (576 * s2**3 * (q4 + 6 * ab2))
    if j == 3:
        q8 = a2**4 + b2**4
        return -(ab2**4) * (93 * q8 + 1048 * ab2 * q4 + 3190 * ab2**2) / (8640 * s2**4 * (q4 + 6 * ab2) ** 2)
    raise DomainError(f"closed forms are known for j <= 3, got {j}")


# H_j ~ b^(2j+2) [leading + subleading (b/a)^2] as a -> infinity at fixed b
PROLATE_TWO_TERM = (
    (Fraction(1, 4), Fraction(-1, 4)),
    (Fraction(-1, 12), Fraction(1, 6)),
    (Fraction(17, 576), Fraction(-55, 576)),
    (Fraction(-31, 2880), Fraction(11, 216)),
)


def prolate_two_term(params: EllipseParams, j: int) -> Fraction:
    lead, sub = PROLATE_TWO_TERM[j]
    b = params.b
    return b ** (2 * j + 2) * (lead + sub * (b / params.a) ** 2)


def small_s_transform(coefficients: list, s: float, geometric_tail: bool = True) -> float:
    """sum_j H_j s^(2j), optionally closing the tail as a geometric series.

    Far enough out the coefficients are dominated by the lowest eigenvalue,
    H_j ~ C (-1/lambda_1)^j, so the remainder after the last term is
    t_J r/(1 - r) with r the ratio of the last two terms.
    """
    terms = [float(c) * s ** (2 * j) for j, c in enumerate(coefficients)]
    total = math.fsum(terms)
    if geometric_tail and len(terms) >= 2 and terms[-2] != 0:
        r = terms[-1] / terms[-2]
        if abs(r) < 1:
            total += terms[-1] * r / (1 - r)
    return total
