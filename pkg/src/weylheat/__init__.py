"""Weyl series of the Laplace-transformed heat content for balls and ellipses."""

from .ball import (
    WeylTable,
    ball_heat_transform,
    ball_weyl_coefficients,
    ball_weyl_via_logderivative,
    even_d_asymptotic_cn,
    hyp3f2_terminating,
    ratio_to_prediction,
)
from .eccentricity import (
    DiskLimitOrder,
    ProlateLimit,
    disk_limit_order,
    prolate_H0,
    prolate_H1,
    prolate_weyl_cn,
    renormalized_cn,
)
from .ellipse import EllipseParams, EllipsePoly, NumericEllipse, small_s_coefficients, solve_order
from .errors import (
    DegenerateEllipseError,
    DomainError,
    NonInvertibleSeriesError,
    QuadratureError,
    RootFindingError,
    TruncationMismatchError,
)
from .exact import AsymptoticSeries, PolyV, series_ratio
from .numerics import adaptive_quadrature, bessel_i, polynomial_roots, spectral_sum_oracle
from .poles import dominant_length, odd_d_rational_form

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
