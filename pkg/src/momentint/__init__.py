"""Certified moment integrals of |sin x|^alpha / |x|^beta and related bounds.

The main entry points are :func:`moment_integral` (the integral with an
a-posteriori error bound), :func:`bounds_report` (two-sided bounds and the
asymptotic equivalent), the Hausdorff-Young bounds in :mod:`momentint.hybounds`
and the product-function machinery in :mod:`momentint.products`.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (AccuracyError, ComputationError, ConfigurationError, DivergenceError,
                     DomainError, MomentsError, UnsupportedError)
from .hybounds import ConjugatePair, hy_bound_a, hy_bound_b, verify_proposition
from .moments import (BoundsReport, asymptotic_equiv, ball_bound_check, bounds_report,
                      lower_bound, oscillation_sweep, upper_bound)
from .products import (ZeroSequence, bessel_j0_zeros, eval_product, load_zero_sequence,
                       product_limit_formula, product_moment, sinc_sequence)
from .quadrature import MomentParams, QuadResult, first_period, moment_integral, wallis
from .specfun import log_gamma, phi
from .tables import SweepTable

__all__ = [
    "AccuracyError", "ComputationError", "ConfigurationError", "DivergenceError",
    "DomainError", "MomentsError", "UnsupportedError",
    "ConjugatePair", "hy_bound_a", "hy_bound_b", "verify_proposition",
    "BoundsReport", "asymptotic_equiv", "ball_bound_check", "bounds_report",
    "lower_bound", "oscillation_sweep", "upper_bound",
    "ZeroSequence", "bessel_j0_zeros", "eval_product", "load_zero_sequence",
    "product_limit_formula", "product_moment", "sinc_sequence",
    "MomentParams", "QuadResult", "first_period", "moment_integral", "wallis",
    "log_gamma", "phi", "SweepTable",
]
