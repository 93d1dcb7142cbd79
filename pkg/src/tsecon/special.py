"""Distribution functions needed for inference.

Student-t probabilities go through the regularised incomplete beta function
(continued fraction, see :mod:`tsecon._kernels`); the standard normal
quantile uses Wichura's AS 241 (PPND16) rational approximation, which is
good to about 1e-16 relative.
"""

import math

import numpy as np

from . import _kernels


def betainc(a, b, x):
    """Regularised incomplete beta function I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("betainc requires a > 0 and b > 0")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"betainc requires 0 <= x <= 1, got {x!r}")
    return _kernels.betainc(float(a), float(b), float(x), 1.0 - float(x))


def t_sf(t, df):
    """Upper tail P(T > t) of Student's t with ``df`` degrees of freedom."""
    if df <= 0:
        raise ValueError("df must be positive")
    if math.isnan(t):
        return math.nan
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    t2 = t * t
    # P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    tail2 = _kernels.betainc(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2))
    return 0.5 * tail2 if t > 0 else 1.0 - 0.5 * tail2


def t_cdf(t, df):
    return t_sf(-t, df)


def t_two_sided(t, df):
    """P(|T| >= |t|); NaN propagates."""
    if df <= 0:
        raise ValueError("df must be positive")
    if math.isnan(t):
        return math.nan
    if math.isinf(t):
        return 0.0
    t2 = t * t
    p = _kernels.betainc(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2))
    return min(1.0, max(0.0, p))


def norm_cdf(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def norm_sf(z):
    return 0.5 * math.erfc(z / math.sqrt(2.0))


# AS 241 PPND16 coefficients
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _horner(coefs, x):
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


def norm_ppf(p):
    """Standard normal quantile."""
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"probability out of range: {p!r}")
    if p == 0.0:
        return -math.inf
    if p == 1.0:
        return math.inf
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _horner(_A, r) / _horner(_B, r)
    r = p if q < 0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        val = _horner(_C, r) / _horner(_D, r)
    else:
        r -= 5.0
        val = _horner(_E, r) / _horner(_F, r)
    return -val if q < 0 else val


def norm_ppf_array(p):
    p = np.asarray(p, dtype=float)
    return np.array([norm_ppf(v) for v in p.ravel()]).reshape(p.shape)
