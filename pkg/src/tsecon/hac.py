"""Newey-West HAC covariance for OLS coefficients.

    V = (X'X)^-1 Omega (X'X)^-1

    Omega = sum_t x_t x_t' e_t^2
          + sum_{l=1..L} w_l sum_{t=l+1..T} (x_t x_{t-l}' + x_{t-l} x_t') e_t e_{t-l}

with Bartlett weights ``w_l = 1 - l/(L+1)``, which keep Omega positive
semidefinite.

Two scalings are offered. ``standard_sandwich`` is the expression above and
is the conventional Newey-West estimator. ``paper_formula`` multiplies it by
an extra ``1/T``; that variant shrinks standard errors by roughly sqrt(T)
and is kept only so the literal printed expression can be evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, LagOutOfRange, LagTooLarge, NegativeDiagonal
from .linreg import DesignMatrix, FitResult, with_covariance

STANDARD = "standard_sandwich"
LITERAL = "paper_formula"
_SCALINGS = (STANDARD, LITERAL)

NEG_DIAG_TOL = 1e-12


@dataclass(frozen=True)
class HacConfig:
    lag_truncation: int = 4
    scaling: str = STANDARD
    small_sample_adjust: bool = False

    def __post_init__(self):
        if int(self.lag_truncation) != self.lag_truncation or self.lag_truncation < 0:
            raise ValueError(f"lag truncation must be a non-negative integer, "
                             f"got {self.lag_truncation!r}")
        object.__setattr__(self, "lag_truncation", int(self.lag_truncation))
        if self.scaling not in _SCALINGS:
            raise ValueError(f"scaling must be one of {_SCALINGS}, got {self.scaling!r}")

    @property
    def kind(self) -> str:
        return f"newey_west({self.lag_truncation})"


def newey_west_lag(T: int) -> int:
    """Rule-of-thumb truncation floor(4 (T/100)^(2/9)); never applied implicitly."""
    return int(math.floor(4.0 * (T / 100.0) ** (2.0 / 9.0)))


def bartlett_weight(l: int, L: int) -> float:
    if L < 0 or not 1 <= l <= L:
        raise LagOutOfRange(f"lag {l} outside 1..{L}")
    return 1.0 - l / (L + 1.0)


def bartlett_weights(L: int) -> np.ndarray:
    return np.array([bartlett_weight(l, L) for l in range(1, L + 1)], dtype=np.float64)


def _as_matrix(X) -> np.ndarray:
    if isinstance(X, DesignMatrix):
        return X.X
    X = np.asarray(X, dtype=np.float64)
    return X[:, None] if X.ndim == 1 else X


def xtx_inverse(X: np.ndarray) -> np.ndarray:
    R = np.linalg.qr(X, mode="r")
    r_inv = np.linalg.inv(R)
    B = r_inv @ r_inv.T
    return 0.5 * (B + B.T)


def newey_west_cov(X, residuals, cfg: HacConfig | None = None) -> np.ndarray:
    cfg = cfg or HacConfig()
    Xm = np.ascontiguousarray(_as_matrix(X))
    e = np.ascontiguousarray(np.asarray(residuals, dtype=np.float64).reshape(-1))
    T, k = Xm.shape
    if e.shape[0] != T:
        raise DimensionMismatch(f"{e.shape[0]} residuals for {T} design rows")
    L = cfg.lag_truncation
    if L >= T - 1:
        raise LagTooLarge(f"lag truncation {L} must be below T-1 = {T - 1}")
    bread = xtx_inverse(Xm)
    meat = _kernels.hac_meat(Xm, e, bartlett_weights(L))
    V = bread @ meat @ bread
    V = 0.5 * (V + V.T)
    if cfg.small_sample_adjust:
        V = V * (T / (T - k))
    if cfg.scaling == LITERAL:
        V = V / T
    return V


def robust_se(V) -> np.ndarray:
    d = np.diag(np.asarray(V, dtype=np.float64)).copy()
    for i, v in enumerate(d):
        if v < -NEG_DIAG_TOL:
            raise NegativeDiagonal(i, float(v))
    return np.sqrt(np.clip(d, 0.0, None))


def refit_with_hac(fit: FitResult, X, cfg: HacConfig | None = None) -> FitResult:
    """Replace the covariance of ``fit`` with the Newey-West estimate.

    Coefficients, residuals and R-squared are carried over untouched.
    """
    cfg = cfg or HacConfig()
    Xm = _as_matrix(X)
    if Xm.shape != (fit.nobs, fit.k):
        raise DimensionMismatch(
            f"design is {Xm.shape[0]}x{Xm.shape[1]}, fit has T={fit.nobs}, k={fit.k}")
    V = newey_west_cov(Xm, fit.residuals, cfg)
    robust_se(V)
    return with_covariance(fit, V, cfg.kind)
