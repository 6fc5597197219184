"""Distortion risk measures, expected utilities and stochastic orders on
finite discrete distributions, with checks of when ordered laws that share a
functional value must coincide."""

from .convexfn import (
    ConvexFunctionRep,
    cfn_eval,
    cfn_exp,
    cfn_from_density,
    cfn_from_piecewise_linear,
    cfn_quadratic,
    cfn_right_derivative,
    covers_lebesgue_gamma,
    expected_utility,
    verify_convexity_grid,
)
from .dist import (
    DiscreteDistribution,
    JointDiscreteDistribution,
    cdf,
    degenerate,
    distribution_of_sum,
    from_samples,
    independent_joint,
    independent_sum,
    lower_stop_loss,
    make_discrete,
    make_joint,
    mean,
    quantile_left,
    quantile_right,
    raw_moment,
    stop_loss,
    survival,
    tvar,
)
from .distortion import (
    DualPowerDistortion,
    PiecewiseLinearDistortion,
    PowerDistortion,
    WangDistortion,
    covers_lebesgue_nu,
    dual,
    mu_of,
    nu_of,
    rho_quantile,
    rho_survival,
    rho_tvar,
)
from .measure import DensityPiece, RadonMeasure
from .orders import (
    OrderReport,
    check_convex,
    check_stop_loss,
    check_supermodular_bivariate,
    check_tvar_spectrum,
    comonotonic_joint,
    comonotonic_sum,
    supermodular_falsify,
)

__version__ = "0.1.0"
