"""Certified critical-line zeta-derivative evaluation and explicit
upper-bound machinery: bound assembly, parameter tuning, and numerical
verification sweeps for every supporting inequality."""

from .bounds import (
    BoundCoefficients,
    BoundCurve,
    BoundParams,
    DEFAULT_PARAMS,
    block_bound_13,
    block_bound_23,
    crude_bound_13,
    crude_bound_23,
    head_sum_bound,
    mid_tail_sum_bound,
    q_polynomial,
    tail_error_bound,
    theorem1_bound,
    theorem2_bound,
    theorem2_coeffs,
    theorem2_parts_exact,
)
from .expsums import (
    BlockScheme,
    PhaseFunction,
    VdCParams,
    WeightSums,
    block_scheme,
    exp_sum_exact,
    log_dirichlet_sum,
    shifted_diff_maxima,
    vdc_params_for_log_block,
    vdc_second_derivative_bound,
    vertex_max_bound,
    vertex_max_estimate,
    weight_sums,
    weyl_differencing_rhs,
)
from .numerics import (
    Accumulator,
    QuadratureResult,
    bernoulli_number,
    compensated_sum,
    geometric_grid,
    integrate_adaptive,
)
from .optimize import (
    Objective,
    OptResult,
    crossover_scan,
    crossover_scan_log,
    optimize_params,
)
from .verify import (
    SampleSpec,
    SUPPORTED_CHECKS,
    VerificationReport,
    verify_lemma,
    verify_theorem_envelope,
)
from .zeta import (
    CertifiedComplex,
    EMConfig,
    EvalPoint,
    default_em_config,
    em_remainder_bound,
    eta_oracle,
    zeta_em,
    zeta_prime_em,
    zeta_prime_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "Accumulator",
    "BlockScheme",
    "BoundCoefficients",
    "BoundCurve",
    "BoundParams",
    "CertifiedComplex",
    "DEFAULT_PARAMS",
    "EMConfig",
    "EvalPoint",
    "Objective",
    "OptResult",
    "PhaseFunction",
    "QuadratureResult",
    "SampleSpec",
    "SUPPORTED_CHECKS",
    "VdCParams",
    "VerificationReport",
    "WeightSums",
    "bernoulli_number",
    "block_bound_13",
    "block_bound_23",
    "block_scheme",
    "compensated_sum",
    "crossover_scan",
    "crossover_scan_log",
    "crude_bound_13",
    "crude_bound_23",
    "default_em_config",
    "em_remainder_bound",
    "eta_oracle",
    "exp_sum_exact",
    "geometric_grid",
    "head_sum_bound",
    "integrate_adaptive",
    "log_dirichlet_sum",
    "mid_tail_sum_bound",
    "optimize_params",
    "q_polynomial",
    "shifted_diff_maxima",
    "tail_error_bound",
    "theorem1_bound",
    "theorem2_bound",
    "theorem2_coeffs",
    "theorem2_parts_exact",
    "vdc_params_for_log_block",
    "vdc_second_derivative_bound",
    "verify_lemma",
    "verify_theorem_envelope",
    "vertex_max_bound",
    "vertex_max_estimate",
    "weight_sums",
    "weyl_differencing_rhs",
    "zeta_em",
    "zeta_prime_em",
    "zeta_prime_oracle",
]
