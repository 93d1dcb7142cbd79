"""Seeded synthetic quarterly dataset with the default five-variable layout.

The series are invented: persistent rate processes for USLR, CPI and WIR,
a trending broad-money level for M2 (raw, not logged), and REER built from
the differenced regressors plus noise so that the first-difference
regression has a known data-generating process::

    dREER = 1.4 - 1.8 dUSLR - 44 dlog(M2) - 0.6 dCPI + 1.0 dWIR + u,  u ~ N(0, 2.5^2)

Values are rounded to four decimals (M2 to whole currency units) so the CSV
is short and exactly reproducible.
"""

from __future__ import annotations

import numpy as np

from .timeseries import Frame, Period, Series

TRUE_COEFFICIENTS = {"(Intercept)": 1.4, "USLR": -1.8, "M2": -44.0, "CPI": -0.6, "WIR": 1.0}


def _bounded_walk(rng, n, start, sd, lo, hi, pull=0.0, centre=None):
    x = np.empty(n)
    x[0] = start
    centre = start if centre is None else centre
    for t in range(1, n):
        step = rng.normal(0.0, sd) + pull * (centre - x[t - 1])
        x[t] = min(max(x[t - 1] + step, lo), hi)
    return x


def make_frame(nobs: int = 80, start="2001Q4", seed: int = 20240531) -> Frame:
    """Raw-unit frame (M2 in currency units, not logged)."""
    rng = np.random.default_rng(seed)
    start = Period.parse(start) if isinstance(start, str) else start
    uslr = _bounded_walk(rng, nobs, 4.75, 0.35, 3.25, 8.25, pull=0.03, centre=4.5)
    cpi = _bounded_walk(rng, nobs, 5.0, 1.6, 3.5, 28.0, pull=0.15, centre=8.0)
    wir = _bounded_walk(rng, nobs, 4.8, 0.3, 0.65, 5.1, pull=0.02, centre=3.0)
    log_m2 = 25.6 + np.cumsum(np.r_[0.0, rng.normal(0.03, 0.02, nobs - 1)])
    u = rng.normal(0.0, 2.5, nobs - 1)
    d_reer = (1.4 - 1.8 * np.diff(uslr) - 44.0 * np.diff(log_m2) - 0.6 * np.diff(cpi)
              + 1.0 * np.diff(wir) + u)
    reer = 95.0 + np.r_[0.0, np.cumsum(d_reer)]
    cols = {
        "REER": np.round(reer, 4),
        "USLR": np.round(uslr, 4),
        "M2": np.round(np.exp(log_m2)),
        "CPI": np.round(cpi, 4),
        "WIR": np.round(wir, 4),
    }
    return Frame(tuple(Series(k, start, v) for k, v in cols.items()))


def write_dataset(path, nobs: int = 80, seed: int = 20240531) -> None:
    f = make_frame(nobs, seed=seed)
    # compact decimals rather than 17 significant digits; values are already rounded
    out = [",".join(["period", *f.names])]
    for period, row in zip(f.periods(), f.to_array()):
        cells = [f"{v:.0f}" if name == "M2" else f"{v:.4f}" for name, v in zip(f.names, row)]
        out.append(",".join([str(period), *cells]))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(out) + "\n")
