"""Time the numba and numpy backends of each numeric kernel.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``. Both variants
are imported directly, so the ``TSECON_DISABLE_NUMBA`` flag does not matter
here; without numba installed the ``*_loop`` column runs as plain Python.
"""

import argparse
import timeit

import numpy as np

from tsecon import _kernels as K
from tsecon._accel import USE_NUMBA


def cases(rng):
    T, k, L = 80, 5, 4
    X = rng.normal(size=(T, k))
    e = rng.normal(size=T)
    w = 1.0 - np.arange(1, L + 1) / (L + 1.0)
    Y = np.cumsum(rng.normal(size=(2000, 101)), axis=1)
    return [
        ("hac_meat T=80 k=5 L=4", K.hac_meat_loop, K.hac_meat_numpy, (X, e, w), 2000),
        ("betainc a=37 b=0.5", K.betainc_loop, K.betainc_numpy, (37.0, 0.5, 0.9, 0.1), 20000),
        ("df_tau_batch 2000x101", K.df_tau_batch_loop, K.df_tau_batch_numpy, (Y, 1), 5),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(0)
    label = "numba" if USE_NUMBA else "loop (no jit)"
    print(f"{'kernel':<26}{label:>16}{'numpy':>14}{'speed-up':>10}")
    for name, fast, ref, call_args, number in cases(rng):
        # agreement check doubles as JIT warm-up
        np.testing.assert_allclose(fast(*call_args), ref(*call_args), rtol=1e-10)
        t_fast = min(timeit.repeat(lambda: fast(*call_args), number=number, repeat=args.repeat))
        t_ref = min(timeit.repeat(lambda: ref(*call_args), number=number, repeat=args.repeat))
        us_fast, us_ref = 1e6 * t_fast / number, 1e6 * t_ref / number
        print(f"{name:<26}{us_fast:>13.2f} us{us_ref:>11.2f} us{us_ref / us_fast:>9.1f}x")


if __name__ == "__main__":
    main()
