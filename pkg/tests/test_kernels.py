"""Compiled loops, uncompiled loops and vectorised kernels must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from tsecon import _accel, _kernels
from tsecon.hac import bartlett_weights


def _variants(name):
    loop = getattr(_kernels, f"{name}_loop")
    out = [("numpy", getattr(_kernels, f"{name}_numpy")), ("py_loop", loop.py_func)]
    if _accel.HAVE_NUMBA:
        out.append(("jit_loop", loop))
    return out


@pytest.mark.parametrize("label, fn", _variants("hac_meat"))
@pytest.mark.parametrize("L", [0, 1, 4])
def test_hac_meat(label, fn, L):
    rng = np.random.default_rng(L)
    X = rng.normal(size=(60, 3))
    e = rng.normal(size=60)
    w = bartlett_weights(L)
    ref = _kernels.hac_meat_loop.py_func(X, e, w)
    assert_allclose(fn(X, e, w), ref, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("label, fn", _variants("betainc"))
def test_betainc(label, fn):
    for a, b, x in [(37.0, 0.5, 0.92), (0.5, 0.5, 0.3), (5.0, 2.0, 0.999), (2.0, 40.0, 1e-3)]:
        assert fn(a, b, x, 1.0 - x) == pytest.approx(
            _kernels.betainc_loop.py_func(a, b, x, 1.0 - x), rel=1e-14)
    assert fn(2.0, 3.0, 0.0, 1.0) == 0.0
    assert fn(2.0, 3.0, 1.0, 0.0) == 1.0


@pytest.mark.parametrize("label, fn", _variants("df_tau_batch"))
@pytest.mark.parametrize("n_det", [0, 1, 2])
def test_df_tau_batch(label, fn, n_det):
    Y = np.cumsum(np.random.default_rng(n_det).normal(size=(20, 51)), axis=1)
    ref = _kernels.df_tau_batch_numpy(Y, n_det)
    assert_allclose(fn(Y, n_det), ref, rtol=1e-9)


def test_df_tau_batch_matches_ols():
    from tsecon.unitroot import adf_test

    Y = np.cumsum(np.random.default_rng(0).normal(size=(5, 41)), axis=1)
    for variant, n_det in [("none", 0), ("constant", 1), ("constant_trend", 2)]:
        taus = _kernels.df_tau_batch_numpy(Y, n_det)
        for row, tau in zip(Y, taus):
            assert adf_test(row, variant).statistic == pytest.approx(tau, rel=1e-9)


@pytest.mark.parametrize("value, expected", [("1", "numpy"), ("", None)])
def test_env_flag_selects_backend(value, expected):
    env = dict(os.environ)
    env[_accel.ENV_FLAG] = value
    out = subprocess.run([sys.executable, "-c", "import tsecon; print(tsecon.backend())"],
                         env=env, capture_output=True, text=True, check=True).stdout.strip()
    assert out == (expected or ("numba" if _accel.HAVE_NUMBA else "numpy"))
