"""Shapiro-Wilk normality test, Royston's AS R94 algorithm.

W is the squared correlation between the ordered sample and the
approximate expected normal order statistics ``a``:

    W = (sum_i a_i x_(i))^2 / sum_i (x_i - mean)^2,   sum a_i^2 = 1

The two extreme coefficients come from Royston's polynomial corrections in
1/sqrt(n); the rest are Blom-type normal scores ``Phi^-1((i - 3/8)/(n + 1/4))``
rescaled so the vector has unit length. The p-value uses Royston's
normalising transformations of W (separate fits for n <= 11 and n >= 12);
for n = 3 the exact distribution is used. Valid for 3 <= n <= 5000.

Ties are allowed and receive no correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SampleTooLarge, SampleTooSmall, ZeroVariance
from .special import norm_ppf_array, norm_sf

MIN_N = 3
MAX_N = 5000

# Royston (1995) constants
_C1 = (0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.5440, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)
_G = (-2.273, 0.459)
_SMALL_P = 1e-99


def _poly(coefs, x):
    # c0 + c1 x + c2 x^2 + ...
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class SwResult:
    w_statistic: float
    p_value: float
    n: int

    def rejects(self, alpha: float = 0.05) -> bool:
        return self.p_value < alpha


def sw_coefficients(n: int) -> np.ndarray:
    """Full antisymmetric coefficient vector (length n, ascending order, unit norm)."""
    if n < MIN_N:
        raise SampleTooSmall(f"Shapiro-Wilk needs n >= {MIN_N}, got {n}")
    half = n // 2
    if n == 3:
        lower = np.array([math.sqrt(0.5)])
    else:
        i = np.arange(1, half + 1, dtype=np.float64)
        m = norm_ppf_array((i - 0.375) / (n + 0.25))     # negative scores
        summ2 = 2.0 * float(m @ m)
        ssumm2 = math.sqrt(summ2)
        rsn = 1.0 / math.sqrt(n)
        a1 = _poly(_C1, rsn) - m[0] / ssumm2
        if n > 5:
            a2 = -m[1] / ssumm2 + _poly(_C2, rsn)
            fac = math.sqrt((summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2)
                            / (1.0 - 2.0 * a1 ** 2 - 2.0 * a2 ** 2))
            lower = -m / fac
            lower[1] = a2
        else:
            fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1 ** 2))
            lower = -m / fac
        lower[0] = a1
    a = np.zeros(n)
    a[:half] = -lower
    a[n - half:] = lower[::-1]
    return a


def _p_value(w: float, n: int) -> float:
    if n == 3:
        # exact: P(W <= w) = (6/pi) (asin(sqrt(w)) - pi/3)
        return max(0.0, min(1.0, (6.0 / math.pi) * (math.asin(math.sqrt(w)) - math.pi / 3.0)))
    w1 = math.log1p(-w) if w < 1.0 else -math.inf
    if n <= 11:
        gamma = _poly(_G, float(n))
        if w1 >= gamma:
            return _SMALL_P
        y = -math.log(gamma - w1)
        mean = _poly(_C3, float(n))
        sd = math.exp(_poly(_C4, float(n)))
    else:
        xx = math.log(n)
        y = w1
        mean = _poly(_C5, xx)
        sd = math.exp(_poly(_C6, xx))
    if math.isinf(y):
        return 1.0
    return norm_sf((y - mean) / sd)


def shapiro_wilk(x) -> SwResult:
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    n = x.shape[0]
    if n < MIN_N:
        raise SampleTooSmall(f"Shapiro-Wilk needs n >= {MIN_N}, got {n}")
    if n > MAX_N:
        raise SampleTooLarge(f"Shapiro-Wilk supports n <= {MAX_N}, got {n}")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")
    xs = np.sort(x)
    if xs[-1] - xs[0] == 0.0:
        raise ZeroVariance()
    # centre and rescale by the range first; W is location-scale invariant
    z = (xs - xs.mean()) / (xs[-1] - xs[0])
    z = z - z.mean()
    ss = float(z @ z)
    if ss == 0.0:
        raise ZeroVariance()
    a = sw_coefficients(n)
    num = float(a @ z)
    w = num * num / ss
    w = min(w, 1.0)
    return SwResult(w, _p_value(w, n), n)
