"""Quarterly macro time-series econometrics.

Differencing and lags for contiguous quarterly series, augmented
Dickey-Fuller tests, OLS with Newey-West HAC covariance, Shapiro-Wilk
residual diagnostics, and a CLI that assembles them into report tables.
"""

__version__ = "0.1.0"

from ._accel import backend
from .errors import DataError, ModelError, TsEconError
from .hac import HacConfig, bartlett_weight, newey_west_cov, refit_with_hac, robust_se
from .ingest import DatasetSchema, load_csv, summary_stats, validate, write_csv
from .linreg import (
    DesignMatrix,
    FitResult,
    RegressionSpec,
    fit_ols,
    ols,
    p_value_two_sided,
    r_squared,
    t_statistics,
)
from .normality import SwResult, shapiro_wilk
from .timeseries import Frame, Period, Series, align, diff, lag, log_transform
from .unitroot import AdfResult, AdfVariant, adf_test, critical_values, stationarity_report

__all__ = [
    "AdfResult", "AdfVariant", "DataError", "DatasetSchema", "DesignMatrix", "FitResult",
    "Frame", "HacConfig", "ModelError", "Period", "RegressionSpec", "Series", "SwResult",
    "TsEconError", "adf_test", "align", "backend", "bartlett_weight", "critical_values",
    "diff", "fit_ols", "lag", "load_csv", "log_transform", "newey_west_cov", "ols",
    "p_value_two_sided", "r_squared", "refit_with_hac", "robust_se", "shapiro_wilk",
    "stationarity_report", "summary_stats", "t_statistics", "validate", "write_csv",
]
