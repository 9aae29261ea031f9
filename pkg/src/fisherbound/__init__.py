"""Moment-based lower bounds on the Fisher information of parametric systems."""

from .analysis import analyze, estimate_from_samples
from .bounds import (
    EquivalentGaussianSystem,
    bound_multivariate,
    bound_univariate,
    equivalent_gaussian,
    gaussian_fisher_full,
)
from .core import (
    BoundReport,
    CovarianceMatrix,
    FisherBoundError,
    FisherMatrix,
    FisherSource,
    ParameterPoint,
    SupportDescriptor,
    crlb_from_fisher,
)
from .exactfi import (
    exact_fi,
    exact_fi_discrete,
    exact_fi_mc,
    exact_fi_quadrature,
    hardlimiter_exact_closed_form,
)
from .moments import (
    MomentCurve,
    MonteCarloMoments,
    moment_curve,
    moments_analytic,
    moments_enumerate,
    moments_mc,
    moments_quadrature,
)
from .numdiff import MeanJacobian, gradient_check, jacobian_covariance, jacobian_mean
from .psdcheck import OrderingVerdict, corollary_check, proposition_check, psd_order
from .systems import (
    AdditiveLocationModel,
    FiniteDiscreteModel,
    HardLimiterModel,
    ParametricSystem,
    ParametricVarianceGaussianModel,
    analytic_score,
    exp_variance_gaussian,
    gaussian_location,
    hardlimiter_pmf,
    laplace_location,
    linear_gaussian,
    log_density,
    sample,
    scale_gaussian,
)

__version__ = "0.1.0"
