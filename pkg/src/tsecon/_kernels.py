"""Numeric inner loops.

Every kernel exists twice: ``*_loop`` (explicit loops, numba-compiled when
numba is available) and ``*_numpy`` (vectorised). The unsuffixed names are
the ones the rest of the package calls; they point at whichever backend
:mod:`tsecon._accel` selected.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# HAC "meat": sum_t x_t x_t' e_t^2 + sum_l w_l sum_t (x_t x_{t-l}' + x_{t-l} x_t') e_t e_{t-l}
# ---------------------------------------------------------------------------


@njit
def hac_meat_loop(X, resid, weights):
    T, k = X.shape
    S = np.zeros((k, k))
    for t in range(T):
        e2 = resid[t] * resid[t]
        for i in range(k):
            xi = X[t, i] * e2
            for j in range(k):
                S[i, j] += xi * X[t, j]
    for lag in range(1, weights.shape[0] + 1):
        w = weights[lag - 1]
        if w == 0.0:
            continue
        for t in range(lag, T):
            ee = w * resid[t] * resid[t - lag]
            for i in range(k):
                xi = X[t, i] * ee
                for j in range(k):
                    c = xi * X[t - lag, j]
                    S[i, j] += c
                    S[j, i] += c
    return S


def hac_meat_numpy(X, resid, weights):
    u = X * resid[:, None]
    S = u.T @ u
    for lag, w in enumerate(weights, start=1):
        if w == 0.0:
            continue
        gamma = u[lag:].T @ u[:-lag]
        S += w * (gamma + gamma.T)
    return S


# ---------------------------------------------------------------------------
# Regularised incomplete beta I_x(a, b), continued fraction (modified Lentz)
# ---------------------------------------------------------------------------

_CF_TINY = 1e-300
_CF_EPS = 1e-16
_CF_MAXIT = 2000


@njit
def _beta_cf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            break
    return h


@njit
def betainc_loop(a, b, x, y):
    """I_x(a, b) with ``y = 1 - x`` passed separately to keep precision near x = 1."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log(y))
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_cf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _beta_cf(b, a, y) / b


def betainc_numpy(a, b, x, y):
    # scalar recurrence; the fallback runs the same continued fraction uncompiled
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    cf = _beta_cf.py_func
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log(y))
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * cf(a, b, x) / a
    return 1.0 - math.exp(log_front) * cf(b, a, y) / b


# ---------------------------------------------------------------------------
# Batched Dickey-Fuller tau (no augmentation lags), used for simulation
# ---------------------------------------------------------------------------


@njit
def df_tau_batch_loop(Y, n_det):
    """tau statistic for each row of ``Y``; regressors are y_{t-1}[, 1[, t]]."""
    reps, m = Y.shape
    n = m - 1
    k = 1 + n_det
    out = np.empty(reps)
    row = np.empty(k)
    for r in range(reps):
        xtx = np.zeros((k, k))
        xty = np.zeros(k)
        for t in range(n):
            row[0] = Y[r, t]
            if n_det >= 1:
                row[1] = 1.0
            if n_det >= 2:
                row[2] = t + 1.0
            dy = Y[r, t + 1] - Y[r, t]
            for i in range(k):
                xty[i] += row[i] * dy
                for j in range(k):
                    xtx[i, j] += row[i] * row[j]
        inv = np.linalg.inv(xtx)
        beta = inv @ xty
        rss = 0.0
        for t in range(n):
            fit = beta[0] * Y[r, t]
            if n_det >= 1:
                fit += beta[1]
            if n_det >= 2:
                fit += beta[2] * (t + 1.0)
            e = Y[r, t + 1] - Y[r, t] - fit
            rss += e * e
        out[r] = beta[0] / math.sqrt(rss / (n - k) * inv[0, 0])
    return out


def df_tau_batch_numpy(Y, n_det):
    reps, m = Y.shape
    n = m - 1
    k = 1 + n_det
    X = np.empty((reps, n, k))
    X[:, :, 0] = Y[:, :-1]
    if n_det >= 1:
        X[:, :, 1] = 1.0
    if n_det >= 2:
        X[:, :, 2] = np.arange(1.0, n + 1.0)
    dy = np.diff(Y, axis=1)
    xtx = np.einsum("rti,rtj->rij", X, X)
    xty = np.einsum("rti,rt->ri", X, dy)
    inv = np.linalg.inv(xtx)
    beta = np.einsum("rij,rj->ri", inv, xty)
    resid = dy - np.einsum("rti,ri->rt", X, beta)
    rss = np.einsum("rt,rt->r", resid, resid)
    return beta[:, 0] / np.sqrt(rss / (n - k) * inv[:, 0, 0])


if USE_NUMBA:
    hac_meat = hac_meat_loop
    betainc = betainc_loop
    df_tau_batch = df_tau_batch_loop
else:
    hac_meat = hac_meat_numpy
    betainc = betainc_numpy
    df_tau_batch = df_tau_batch_numpy
