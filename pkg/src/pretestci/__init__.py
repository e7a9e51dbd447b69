"""Confidence intervals for regression coefficients under AR(1) errors.

Builds OLS, feasible-GLS and Durbin-Watson two-stage confidence intervals for
a linear combination of regression coefficients, and estimates their
coverage-probability-versus-psi curves by variance-reduced Monte Carlo so the
better interval can be chosen from the design matrix alone, before the
response is examined.
"""

__version__ = "0.1.0"

from .ar1 import (
    Ar1Model,
    ar1_covariance,
    ar1_logdet,
    ar1_precision,
    simulate_edagger,
    simulate_edagger_many,
    whiten,
)
from .designs import fixture_problem, ones_problem, trending_problem
from .errors import (
    CsvParseError,
    DegenerateFitError,
    DegenerateResidualsError,
    DimensionMismatchError,
    DomainError,
    IllConditionedDesignError,
    PretestCIError,
    QuadratureError,
    RankDeficientDesignError,
)
from .estimators import (
    CriterionProfile,
    PsiEstimatorKind,
    criterion_profile,
    estimate_psi,
    estimate_psi_many,
    ml_criterion,
    ols_residuals,
    psi_hat_sample,
    reml_criterion,
)
from .gls import (
    GlsCache,
    Interval,
    Problem,
    confidence_interval,
    coverage_indicator,
    gls_cache,
    t_quantile,
    w_statistic,
)
from .mc import (
    DEFAULT_GRID,
    CoverageEstimate,
    IntervalKind,
    McMethod,
    OracleReport,
    SimConfig,
    coverage_bruteforce,
    coverage_curve,
    coverage_curves,
    coverage_cv_fgls,
    coverage_cv_twostage,
    oracle_check,
    relative_efficiency,
)
from .pretest import (
    ImhofInput,
    PretestFamily,
    PretestSpec,
    build_pretest,
    dw_critical_value,
    dw_null_cdf,
    dw_statistic,
    imhof_prob_positive,
    residual_spectrum,
    tstat_pretest,
)

__all__ = [
    "__version__",
    "Ar1Model",
    "ar1_covariance",
    "ar1_precision",
    "ar1_logdet",
    "whiten",
    "simulate_edagger",
    "simulate_edagger_many",
    "Problem",
    "Interval",
    "GlsCache",
    "gls_cache",
    "w_statistic",
    "coverage_indicator",
    "confidence_interval",
    "t_quantile",
    "PsiEstimatorKind",
    "CriterionProfile",
    "ols_residuals",
    "psi_hat_sample",
    "ml_criterion",
    "reml_criterion",
    "estimate_psi",
    "estimate_psi_many",
    "criterion_profile",
    "PretestFamily",
    "PretestSpec",
    "ImhofInput",
    "dw_statistic",
    "residual_spectrum",
    "imhof_prob_positive",
    "dw_null_cdf",
    "dw_critical_value",
    "tstat_pretest",
    "build_pretest",
    "IntervalKind",
    "McMethod",
    "SimConfig",
    "CoverageEstimate",
    "DEFAULT_GRID",
    "coverage_bruteforce",
    "coverage_cv_fgls",
    "coverage_cv_twostage",
    "coverage_curve",
    "coverage_curves",
    "relative_efficiency",
    "oracle_check",
    "OracleReport",
    "ones_problem",
    "fixture_problem",
    "trending_problem",
    "PretestCIError",
    "DomainError",
    "DimensionMismatchError",
    "RankDeficientDesignError",
    "IllConditionedDesignError",
    "DegenerateResidualsError",
    "DegenerateFitError",
    "QuadratureError",
    "CsvParseError",
]
