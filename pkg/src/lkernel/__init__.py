"""Fourier coefficients of L-value kernels for level-one eigenforms,
computed through shifted divisor convolutions, with numerical verification
of the central identities at desk scale."""

from .cacheio import CacheFile, cache_load, cache_store, cached_eigenform
from .checks import CheckResult, run_suite
from .conv import (
    ConvolutionQuery,
    DShiftResult,
    FractionSpec,
    d_auto,
    d_continued,
    d_direct,
    d_holomorphy_probe,
    estermann_full,
    estermann_truncated,
    ramanujan_exact,
    ramanujan_exp_sum,
)
from .errors import ConvergenceError, PoleError, TailBoundError
from .kernel import (
    KernelCoefficientReport,
    KernelParams,
    alpha_coeff,
    canonical_params,
    finite_part,
    inner_product,
    inner_product_quadrature_oracle,
    kernel_coefficient,
    kernel_symmetry_pair,
    negative_tail,
)
from .lfun import LQuery, completed_l, l_value
from .qexp import (
    EIGENFORM_WEIGHTS,
    Eigenform,
    FundamentalDomain,
    QExpansion,
    STANDARD_DOMAIN,
    delta_q,
    eigenform,
    eisenstein_q,
    petersson_norm_numeric,
    rankin_cohen,
)
from .special import (
    bernoulli,
    binom_general,
    gamma,
    hurwitz_zeta,
    lambda_completed,
    riemann_zeta,
    sigma,
    upper_incomplete_gamma,
)

__version__ = "0.1.0"
