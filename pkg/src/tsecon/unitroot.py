"""Augmented Dickey-Fuller unit-root test.

The test regression is

    dy_t = rho * y_{t-1} + sum_{i=1..p} gamma_i dy_{t-i} [+ c] [+ delta t] + e_t

fitted by OLS; the statistic is rho_hat / se(rho_hat) with the classical
standard error. Under the unit-root null this ratio follows the
Dickey-Fuller distribution, not Student's t, so it is graded against the
critical values below (left tail).

Critical values
---------------
The primary source is the classical finite-sample table (Fuller 1976, as
reproduced e.g. in Hamilton 1994, Table B.6, cases 1, 2 and 4), stored for
n = 25, 50, 100, 250, 500 and infinity and interpolated linearly in 1/n.
Below n = 25 the 25-50 segment is extended down to n = 10.

MacKinnon's (2010) response surfaces

    cv(n) = b0 + b1/n + b2/n^2 + b3/n^3

are embedded as an independent second route (``method="mackinnon"``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .errors import SampleTooSmall, SeriesTooShort, ZeroVariance
from .linreg import DesignMatrix, ols
from .timeseries import Frame, Series, diff

LEVELS = ("1%", "5%", "10%")


class AdfVariant(str, Enum):
    NONE = "none"
    CONSTANT = "constant"
    CONSTANT_TREND = "constant_trend"

    @classmethod
    def parse(cls, value) -> "AdfVariant":
        if isinstance(value, AdfVariant):
            return value
        key = str(value).strip().lower()
        aliases = {"none": cls.NONE, "n": cls.NONE, "nc": cls.NONE,
                   "constant": cls.CONSTANT, "c": cls.CONSTANT,
                   "constant_trend": cls.CONSTANT_TREND, "trend": cls.CONSTANT_TREND,
                   "ct": cls.CONSTANT_TREND}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown ADF variant {value!r}") from None

    @property
    def n_deterministic(self) -> int:
        return {"none": 0, "constant": 1, "constant_trend": 2}[self.value]


# (n, 1%, 5%, 10%); n = inf last
_FULLER = {
    AdfVariant.NONE: [
        (25, -2.66, -1.95, -1.60),
        (50, -2.62, -1.95, -1.61),
        (100, -2.60, -1.95, -1.61),
        (250, -2.58, -1.95, -1.62),
        (500, -2.58, -1.95, -1.62),
        (math.inf, -2.58, -1.95, -1.62),
    ],
    AdfVariant.CONSTANT: [
        (25, -3.75, -3.00, -2.63),
        (50, -3.58, -2.93, -2.60),
        (100, -3.51, -2.89, -2.58),
        (250, -3.46, -2.88, -2.57),
        (500, -3.44, -2.87, -2.57),
        (math.inf, -3.43, -2.86, -2.57),
    ],
    AdfVariant.CONSTANT_TREND: [
        (25, -4.38, -3.60, -3.24),
        (50, -4.15, -3.50, -3.18),
        (100, -4.04, -3.45, -3.15),
        (250, -3.99, -3.43, -3.13),
        (500, -3.98, -3.42, -3.13),
        (math.inf, -3.96, -3.41, -3.12),
    ],
}

# MacKinnon (2010), one I(1) variable; rows are 1%, 5%, 10%; columns b0..b3.
# The no-constant case is from MacKinnon (1996).
_MACKINNON = {
    AdfVariant.NONE: [
        (-2.56574, -2.2358, -3.627, 0.0),
        (-1.94100, -0.2686, -3.365, 31.223),
        (-1.61682, 0.2656, -2.714, 25.364),
    ],
    AdfVariant.CONSTANT: [
        (-3.43035, -6.5393, -16.786, -79.433),
        (-2.86154, -2.8903, -4.234, -40.040),
        (-2.56677, -1.5384, -2.809, 0.0),
    ],
    AdfVariant.CONSTANT_TREND: [
        (-3.95877, -9.0531, -28.428, -134.155),
        (-3.41049, -4.3904, -9.036, -45.374),
        (-3.12705, -2.5856, -3.925, -22.380),
    ],
}

MIN_TABLE_N = 10


def critical_values(variant, n, method: str = "table") -> dict[str, float]:
    """Left-tail 1%/5%/10% critical values for effective sample size ``n``."""
    variant = AdfVariant.parse(variant)
    if n < MIN_TABLE_N:
        raise SampleTooSmall(f"critical values need n >= {MIN_TABLE_N}, got {n}")
    if method == "mackinnon":
        return mackinnon_critical_values(variant, n)
    if method != "table":
        raise ValueError(f"unknown critical value method {method!r}")
    rows = _FULLER[variant]
    inv = 0.0 if math.isinf(n) else 1.0 / n
    xs = [0.0 if math.isinf(r[0]) else 1.0 / r[0] for r in rows]
    # xs decreasing in table order; find the bracketing segment (extrapolate past n=25)
    seg = 0
    for i in range(len(rows) - 1):
        if xs[i] >= inv >= xs[i + 1]:
            seg = i
            break
    x0, x1 = xs[seg], xs[seg + 1]
    frac = (inv - x0) / (x1 - x0)
    return {lev: rows[seg][j + 1] + frac * (rows[seg + 1][j + 1] - rows[seg][j + 1])
            for j, lev in enumerate(LEVELS)}


def mackinnon_critical_values(variant, n) -> dict[str, float]:
    variant = AdfVariant.parse(variant)
    inv = 0.0 if math.isinf(n) else 1.0 / n
    return {lev: b0 + b1 * inv + b2 * inv ** 2 + b3 * inv ** 3
            for lev, (b0, b1, b2, b3) in zip(LEVELS, _MACKINNON[variant])}


def grade(statistic: float, cvs: dict[str, float]) -> str:
    if statistic < cvs["1%"]:
        return "at_1"
    if statistic < cvs["5%"]:
        return "at_5"
    if statistic < cvs["10%"]:
        return "at_10"
    return "none"


STARS = {"at_1": "***", "at_5": "**", "at_10": "*", "none": ""}


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    variant: AdfVariant
    lag_order: int
    nobs_used: int
    critical_values: dict[str, float]
    significance: str
    rho: float = math.nan
    name: str = ""
    selection: str = "fixed"
    aic_by_lag: dict[int, float] = field(default_factory=dict)

    @property
    def stars(self) -> str:
        return STARS[self.significance]

    def rejects(self, level: str = "5%") -> bool:
        return self.statistic < self.critical_values[level]


def default_max_lag(n: int) -> int:
    """Schwert's rule floor(12 (n/100)^(1/4))."""
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def _regression(y: np.ndarray, p: int, variant: AdfVariant, first: int):
    """Dependent vector and design for dy_t with t starting at dy index ``first``."""
    dy = np.diff(y)
    rows = np.arange(first, dy.shape[0])
    cols, names = [], []
    if variant.n_deterministic >= 1:
        cols.append(np.ones(rows.shape[0]))
        names.append("const")
    cols.append(y[rows])
    names.append("y_lag")
    for i in range(1, p + 1):
        cols.append(dy[rows - i])
        names.append(f"dy_lag{i}")
    if variant.n_deterministic >= 2:
        cols.append(rows + 1.0)
        names.append("trend")
    design = DesignMatrix(np.column_stack(cols), tuple(names),
                          variant.n_deterministic >= 1)
    return dy[rows], design


def adf_test(s, variant="none", lags: int | None = 0, selection: str = "fixed",
             name: str | None = None) -> AdfResult:
    """ADF test of ``s`` (a :class:`Series` or 1-d array).

    ``selection="fixed"`` uses ``lags`` augmentation terms. ``selection="aic"``
    treats ``lags`` as the maximum (``None``: Schwert's rule), compares AIC
    for p = 0..max on the common sample that drops the first max+1
    observations, and re-fits the chosen p on its largest available sample.
    """
    variant = AdfVariant.parse(variant)
    if isinstance(s, Series):
        y = s.values
        name = s.name if name is None else name
    else:
        y = np.asarray(s, dtype=np.float64).reshape(-1)
    name = name or ""
    n_det = variant.n_deterministic

    if selection == "aic":
        max_p = default_max_lag(y.shape[0]) if lags is None else int(lags)
    elif selection == "fixed":
        max_p = 0 if lags is None else int(lags)
    else:
        raise ValueError(f"unknown lag selection {selection!r}")
    if max_p < 0:
        raise ValueError("lag order must be non-negative")
    # the largest regression has 1 + p + n_det columns and n - 1 - p rows
    min_len = 2 * max_p + 3 + n_det
    if y.shape[0] < min_len:
        raise SeriesTooShort(y.shape[0], min_len)
    if float(np.ptp(y)) == 0.0:
        raise ZeroVariance(name or None)

    aic_by_lag = {}
    p = max_p
    if selection == "aic":
        best = math.inf
        for cand in range(max_p + 1):
            dep, X = _regression(y, cand, variant, max_p)
            aic = ols(dep, X).aic
            aic_by_lag[cand] = aic
            if aic < best:
                best, p = aic, cand

    dep, X = _regression(y, p, variant, p)
    fit = ols(dep, X)
    i_rho = 1 if n_det >= 1 else 0
    se = fit.std_errors[i_rho]
    if not se > 0:
        raise ZeroVariance(name or None)
    stat = float(fit.coefficients[i_rho] / se)
    cvs = critical_values(variant, max(fit.nobs, MIN_TABLE_N))
    return AdfResult(stat, variant, p, fit.nobs, cvs, grade(stat, cvs),
                     rho=float(fit.coefficients[i_rho]), name=name,
                     selection=selection, aic_by_lag=aic_by_lag)


@dataclass(frozen=True)
class StationarityRow:
    label: str
    column: str
    differenced: bool
    result: AdfResult


def stationarity_report(f: Frame, variant="none", lags: int | None = 0,
                        selection: str = "fixed") -> list[StationarityRow]:
    """ADF in levels for every column, then in first differences."""
    rows = [StationarityRow(s.name, s.name, False, adf_test(s, variant, lags, selection))
            for s in f]
    for s in f:
        d = diff(s, 1)
        rows.append(StationarityRow(f"{s.name} (First Difference)", s.name, True,
                                    adf_test(d, variant, lags, selection, name=d.name)))
    return rows


def simulate_tau(n: int, variant="none", reps: int = 10000, seed=0) -> np.ndarray:
    """Draws of the p=0 Dickey-Fuller statistic under a driftless random walk."""
    variant = AdfVariant.parse(variant)
    rng = np.random.default_rng(seed)
    Y = np.cumsum(rng.standard_normal((reps, n + 1)), axis=1)
    return _kernels.df_tau_batch(Y, variant.n_deterministic)


def simulated_critical_values(n: int, variant="none", reps: int = 20000,
                              seed=0) -> dict[str, float]:
    taus = simulate_tau(n, variant, reps, seed)
    q = np.quantile(taus, [0.01, 0.05, 0.10])
    return dict(zip(LEVELS, map(float, q)))
