"""Generalized Gauss and confluent hypergeometric functions, the extended
beta function with a confluent kernel, and numerical certification of
bounds and Gruss-type inequalities they satisfy."""
from .errors import ConvergenceError, DomainError, HypergrussError, HypothesisError
from .hyperseries import (
    EvalConfig,
    EvalResult,
    Method,
    gauss_2f1,
    gauss_2f1_beta_expansion,
    gchf_series,
    gghf_series,
    kummer_1f1,
    kummer_1f1_beta_expansion,
    kummer_neg_kernel,
)
from .inequalities import (
    GrussInstance,
    IneqReport,
    check_corollaries_p0,
    check_corollary_prop,
    check_prop_bounds,
    check_thm_A,
    check_thm_B,
    check_thm_C,
    check_thm_I0,
    gruss_check,
    ratio_1r1,
    ratio_2r1,
)
from .params import ParamSet
from .quadrature import (
    GenBetaValue,
    QuadConfig,
    QuadResult,
    de_integrate,
    gauss_2f1_integral,
    gchf_integral,
    gen_beta,
    gghf_integral,
    integrate01,
    kummer_1f1_integral,
)
from .scalar_core import (
    beta,
    lambda_envelope,
    log_beta,
    log_gamma,
    log_pochhammer,
    pochhammer,
    theta_envelope,
)

__version__ = "0.1.0"
