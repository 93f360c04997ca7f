"""Bootstrap cointegration tests for conditional and unconditional ARDL models.

The package covers the full workflow: unit-root pretesting, lag selection,
estimation of the error-correction ARDL equation and the marginal system
of the regressors, residual-bootstrap null distributions of the three
cointegration statistics (overall F, t, regressor-level F), comparison
against published bound thresholds, a decision tree over the test
outcomes, and the trivariate simulator behind the size/power study.
"""

__version__ = "0.1.0"

from .adf import DF_CRITICAL_VALUES, AdfResult, adf_test
from .ardl import (
    ArdlFit,
    ArdlSpec,
    TestStatistics,
    build_ardl_design,
    estimate_ardl,
    estimate_restricted,
    long_run_coefficients,
    select_lags,
)
from .bootstrap import (
    BootstrapConfig,
    BootstrapReport,
    Outcome,
    bootstrap_tests,
    classify_outcome,
    critical_value,
    p_value,
    recenter,
    regenerate_sample,
    restricted_residuals,
)
from .bounds import BoundThresholdTable, bound_verdict
from .dataio import AnalysisReport, load_csv
from .dgp import (
    ConditionalParams,
    DgpConfig,
    MonteCarloResult,
    derive_conditional_params,
    make_config,
    monte_carlo,
    simulate_dgp,
)
from .exceptions import ArdlBootError
from .frame import TimeSeriesFrame
from .regression import DesignMatrix, OlsFit, f_statistic, ols_fit, t_statistic
from .vecm import VecmFit, estimate_vecm_marginal

__all__ = [
    "AdfResult",
    "AnalysisReport",
    "ArdlBootError",
    "ArdlFit",
    "ArdlSpec",
    "BootstrapConfig",
    "BootstrapReport",
    "BoundThresholdTable",
    "ConditionalParams",
    "DesignMatrix",
    "DF_CRITICAL_VALUES",
    "DgpConfig",
    "MonteCarloResult",
    "OlsFit",
    "Outcome",
    "TestStatistics",
    "TimeSeriesFrame",
    "VecmFit",
    "adf_test",
    "bootstrap_tests",
    "bound_verdict",
    "build_ardl_design",
    "classify_outcome",
    "critical_value",
    "derive_conditional_params",
    "estimate_ardl",
    "estimate_restricted",
    "estimate_vecm_marginal",
    "f_statistic",
    "load_csv",
    "long_run_coefficients",
    "make_config",
    "monte_carlo",
    "ols_fit",
    "p_value",
    "recenter",
    "regenerate_sample",
    "restricted_residuals",
    "select_lags",
    "simulate_dgp",
    "t_statistic",
]
