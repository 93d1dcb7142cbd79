"""Ordinary least squares with classical inference.

Coefficients are obtained from a QR factorisation of the design matrix, not
from the normal equations. Before solving, the design is checked for rank:
each column is scaled to unit length and the ratio of smallest to largest
singular value must be at least ``RANK_TOL``. With an intercept, the
intercept is always column 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from . import special
from .errors import (
    DegenerateDependent,
    DimensionMismatch,
    RankDeficient,
    TooFewObservations,
    ZeroStandardError,
)
from .timeseries import Frame

RANK_TOL = 1e-10
INTERCEPT = "(Intercept)"
CLASSICAL = "classical"
EXACT_FIT_TOL = 1e-20


@dataclass(frozen=True)
class RegressionSpec:
    dependent: str
    regressors: tuple[str, ...]
    include_intercept: bool = True

    def __post_init__(self):
        regs = tuple(self.regressors)
        object.__setattr__(self, "regressors", regs)
        if self.dependent in regs:
            raise ValueError(f"dependent variable {self.dependent!r} is also a regressor")
        if len(set(regs)) != len(regs):
            raise ValueError("regressors must be unique")
        if not regs and not self.include_intercept:
            raise ValueError("model has no regressors")

    @property
    def coef_names(self) -> list[str]:
        return ([INTERCEPT] if self.include_intercept else []) + list(self.regressors)


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """T x k regressor matrix; row t is the regressor vector at time t."""

    X: np.ndarray
    names: tuple[str, ...]
    has_intercept: bool = False

    def __post_init__(self):
        X = np.array(self.X, dtype=np.float64, copy=True)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2:
            raise DimensionMismatch("design matrix must be two-dimensional")
        if len(self.names) != X.shape[1]:
            raise DimensionMismatch(f"{len(self.names)} names for {X.shape[1]} columns")
        if not np.all(np.isfinite(X)):
            raise ValueError("design matrix contains non-finite entries")
        X.flags.writeable = False
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def T(self) -> int:
        return self.X.shape[0]

    @property
    def k(self) -> int:
        return self.X.shape[1]

    @classmethod
    def from_columns(cls, columns: Sequence[np.ndarray], names: Sequence[str],
                     intercept: bool = True) -> "DesignMatrix":
        cols = [np.asarray(c, dtype=np.float64) for c in columns]
        T = cols[0].shape[0] if cols else None
        if intercept:
            if T is None:
                raise ValueError("cannot infer T for an intercept-only design")
            cols = [np.ones(T)] + cols
            names = [INTERCEPT, *names]
        return cls(np.column_stack(cols), tuple(names), intercept)


@dataclass(frozen=True, eq=False)
class FitResult:
    names: tuple[str, ...]
    coefficients: np.ndarray
    residuals: np.ndarray
    covariance: np.ndarray
    std_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    nobs: int
    df_resid: int
    r_squared: float
    rss: float
    has_intercept: bool
    covariance_kind: str = CLASSICAL
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def k(self) -> int:
        return self.coefficients.shape[0]

    @property
    def sigma2(self) -> float:
        return self.rss / self.df_resid

    @property
    def aic(self) -> float:
        """n log(RSS/n) + 2k (Gaussian log-likelihood up to a constant)."""
        if self.rss <= 0:
            return -math.inf
        return self.nobs * math.log(self.rss / self.nobs) + 2 * self.k

    def coef(self, name: str) -> float:
        return float(self.coefficients[self.names.index(name)])

    def se(self, name: str) -> float:
        return float(self.std_errors[self.names.index(name)])

    def tvalue(self, name: str) -> float:
        return float(self.t_values[self.names.index(name)])


def check_rank(X: np.ndarray) -> None:
    norms = np.sqrt(np.einsum("ij,ij->j", X, X))
    if np.any(norms == 0):
        raise RankDeficient(f"design column {int(np.flatnonzero(norms == 0)[0])} is all zero")
    sv = np.linalg.svd(X / norms, compute_uv=False)
    if sv[-1] < RANK_TOL * sv[0]:
        raise RankDeficient(
            f"design matrix is rank deficient (singular value ratio {sv[-1] / sv[0]:.2e})")


def _inference(beta, cov, df):
    se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = beta / se
    p = np.array([p_value_two_sided(v, df) if math.isfinite(v) else
                  (0.0 if math.isinf(v) else math.nan) for v in t])
    return se, t, p


def ols(y, design: DesignMatrix) -> FitResult:
    """Fit ``y`` on ``design`` by least squares."""
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    X = design.X
    T, k = X.shape
    if y.shape[0] != T:
        raise DimensionMismatch(f"y has {y.shape[0]} rows, design has {T}")
    if not np.all(np.isfinite(y)):
        raise ValueError("dependent variable contains non-finite values")
    if T <= k:
        raise TooFewObservations(f"{T} observations for {k} coefficients")
    check_rank(X)

    Q, R = np.linalg.qr(X)
    beta = np.linalg.solve(R, Q.T @ y)
    resid = y - X @ beta
    rss = float(resid @ resid)
    df = T - k
    r_inv = np.linalg.inv(R)
    bread = r_inv @ r_inv.T
    bread = 0.5 * (bread + bread.T)
    cov = (rss / df) * bread
    se, t, p = _inference(beta, cov, df)

    tss = _tss(y, design.has_intercept)
    r2 = 1.0 - rss / tss if tss > 0 else math.nan
    notes = ()
    # residual norm below 1e-10 of the dependent's spread: an exact fit up to round-off
    if rss <= EXACT_FIT_TOL * tss:
        notes = ("residual variance is zero; inference is degenerate",)
    return FitResult(
        names=design.names, coefficients=beta, residuals=resid, covariance=cov,
        std_errors=se, t_values=t, p_values=p, nobs=T, df_resid=df, r_squared=r2,
        rss=rss, has_intercept=design.has_intercept, notes=notes)


def _tss(y, centered):
    dev = y - y.mean() if centered else y
    return float(dev @ dev)


def design_matrix(f: Frame, spec: RegressionSpec) -> tuple[np.ndarray, DesignMatrix]:
    y = f[spec.dependent].values
    cols = [f[name].values for name in spec.regressors]
    if spec.include_intercept:
        X = np.column_stack([np.ones(f.nobs), *cols]) if cols else np.ones((f.nobs, 1))
    else:
        X = np.column_stack(cols)
    return y, DesignMatrix(X, tuple(spec.coef_names), spec.include_intercept)


def fit_ols(f: Frame, spec: RegressionSpec) -> FitResult:
    y, X = design_matrix(f, spec)
    return ols(y, X)


def with_covariance(fit: FitResult, cov: np.ndarray, kind: str) -> FitResult:
    """Copy of ``fit`` whose covariance-derived fields come from ``cov``."""
    se, t, p = _inference(fit.coefficients, cov, fit.df_resid)
    return replace(fit, covariance=cov, std_errors=se, t_values=t, p_values=p,
                   covariance_kind=kind)


def t_statistics(fit: FitResult) -> np.ndarray:
    se = fit.std_errors
    for i, s in enumerate(se):
        if not s > 0:
            raise ZeroStandardError(i)
    return fit.coefficients / se


def p_value_two_sided(t: float, df: int) -> float:
    """2 (1 - F(|t|; df)) for Student's t."""
    if df < 1:
        raise ValueError("df must be >= 1")
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    return special.t_two_sided(float(t), df)


def r_squared(fit: FitResult, y) -> float:
    y = np.asarray(y, dtype=np.float64)
    tss = _tss(y, fit.has_intercept)
    if tss == 0:
        raise DegenerateDependent("dependent variable has zero total sum of squares")
    return 1.0 - float(fit.residuals @ fit.residuals) / tss
