"""Closed-form information divergences between Cauchy distributions.

The library computes the Kullback-Leibler divergence, cross-entropy,
differential entropy and the underlying parametric log-quadratic
integral A in closed form (`cauchykl.core`), validates every formula
against an independent adaptive-quadrature and Monte-Carlo oracle
(`cauchykl.oracle`), and machine-checks the creative-telescoping
derivation behind the closed form in exact rational arithmetic
(`cauchykl.certificate`). A batch CLI fronts all of it
(`cauchykl.cli`, installed as the `cauchykl` command).
"""

from .core import (
    CanonicalReduction,
    CauchyDist,
    PositiveQuadratic,
    canonical_reduce,
    cross_entropy_closed,
    density,
    entropy_closed,
    integral_a,
    integral_a_canonical,
    integral_a_dd,
    kl_closed,
    kl_location_family,
    kl_scale_family,
    primitive_b,
    prudnikov_special,
    quantile,
    standardize_pair,
)
from .errors import (
    CauchyKLError,
    IntegrandEvaluationError,
    ParameterError,
    SingularPointError,
)
from .jets import Jet
from .oracle import (
    DEFAULT_CONFIG,
    MonteCarloResult,
    QuadratureConfig,
    QuadratureResult,
    cross_entropy_numeric,
    f_divergence_numeric,
    integral_a_numeric,
    integrate_real_line,
    kl_monte_carlo,
    kl_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalReduction",
    "CauchyDist",
    "CauchyKLError",
    "DEFAULT_CONFIG",
    "IntegrandEvaluationError",
    "Jet",
    "MonteCarloResult",
    "ParameterError",
    "PositiveQuadratic",
    "QuadratureConfig",
    "QuadratureResult",
    "SingularPointError",
    "canonical_reduce",
    "cross_entropy_closed",
    "cross_entropy_numeric",
    "density",
    "entropy_closed",
    "f_divergence_numeric",
    "integral_a",
    "integral_a_canonical",
    "integral_a_dd",
    "integral_a_numeric",
    "integrate_real_line",
    "kl_closed",
    "kl_location_family",
    "kl_monte_carlo",
    "kl_numeric",
    "kl_scale_family",
    "primitive_b",
    "prudnikov_special",
    "quantile",
    "standardize_pair",
    "__version__",
]
