"""Report assembly: summary, ADF and regression tables plus diagnostics.

Every command builds a :class:`Section` holding both the machine-readable
numbers (``data``, full precision) and a :class:`RenderedTable` whose cells
are the rounded strings. Renderers turn a list of sections into text, JSON
or CSV; none of them consult clocks, paths or locale, so output is
byte-for-byte reproducible.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from . import hac as hac_mod
from .errors import EmptyFrame
from .hac import HacConfig, newey_west_lag, refit_with_hac
from .ingest import DatasetSchema, load_csv, summary_stats
from .linreg import RegressionSpec, design_matrix, ols
from .normality import shapiro_wilk
from .timeseries import Frame, align, diff
from .unitroot import AdfVariant, stationarity_report

FORMATS = ("text", "json", "csv")

DEFAULT_LABELS = {
    "REER": "REER (Real Effective Exchange Rate)",
    "USLR": "USLR (US Lending Rate)",
    "M2": "M2 (log Money Supply)",
    "CPI": "CPI (Inflation)",
    "WIR": "WIR (World Interest Rate)",
}
DEFAULT_SOURCES = {
    "REER": "IMF", "USLR": "IMF", "M2": "IMF", "CPI": "IMF", "WIR": "Federal Reserve",
}
DEFAULT_DECIMALS = {"REER": 2, "USLR": 3, "M2": 2, "CPI": 3, "WIR": 4}


@dataclass(frozen=True)
class ReportConfig:
    data_path: str
    schema: DatasetSchema = field(default_factory=DatasetSchema)
    difference: bool = True
    hac: HacConfig = field(default_factory=HacConfig)
    hac_auto_lag: bool = False
    adf_variant: AdfVariant = AdfVariant.NONE
    adf_lags: int | None = 0
    adf_selection: str = "fixed"
    output_format: str = "text"
    star_thresholds: tuple[float, float, float] = (0.01, 0.05, 0.10)
    dependent: str | None = None
    regressors: tuple[str, ...] | None = None
    labels: dict = field(default_factory=lambda: dict(DEFAULT_LABELS))
    sources: dict = field(default_factory=lambda: dict(DEFAULT_SOURCES))
    decimals: dict = field(default_factory=lambda: dict(DEFAULT_DECIMALS))

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}")
        th = tuple(self.star_thresholds)
        if len(th) != 3 or not (0 < th[0] < th[1] < th[2] < 1):
            raise ValueError("star thresholds must be strictly increasing inside (0, 1)")
        object.__setattr__(self, "adf_variant", AdfVariant.parse(self.adf_variant))
        if self.adf_selection not in ("fixed", "aic"):
            raise ValueError("ADF lag selection must be 'fixed' or 'aic'")
        known = set(self.schema.variable_columns)
        model = (self.dependent_name, *self.regressor_names)
        missing = [n for n in model if n not in known]
        if missing:
            raise ValueError(f"model variables not in the data schema: {missing}")
        if self.dependent_name in self.regressor_names:
            raise ValueError("dependent variable cannot also be a regressor")

    @property
    def dependent_name(self) -> str:
        return self.dependent or self.schema.variable_columns[0]

    @property
    def regressor_names(self) -> tuple[str, ...]:
        if self.regressors is not None:
            return tuple(self.regressors)
        return tuple(c for c in self.schema.variable_columns if c != self.dependent_name)


@dataclass(frozen=True)
class RenderedTable:
    title: str
    headers: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    footnotes: tuple[str, ...] = ()

    def __post_init__(self):
        for r in self.rows:
            if len(r) != len(self.headers):
                raise ValueError(f"row {r!r} has {len(r)} cells, expected {len(self.headers)}")


@dataclass(frozen=True)
class Section:
    key: str
    data: object
    table: RenderedTable | None = None
    lines: tuple[str, ...] = ()
    records: tuple[dict, ...] = ()


# ---------------------------------------------------------------------------
# number formatting
# ---------------------------------------------------------------------------

def _clean_zero(s: str) -> str:
    if s.startswith("-") and s.strip("-0.e+") == "":
        return s[1:]
    return s


def fmt_fixed(x: float, decimals: int) -> str:
    if x is None or math.isnan(x):
        return "NA"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return _clean_zero(f"{x:.{decimals}f}")


def fmt_p(p: float, decimals: int = 5) -> str:
    """Fixed decimals, scientific below 1e-4 (as in regression printouts)."""
    if p is None or math.isnan(p):
        return "NA"
    if p < 1e-4:
        return f"{p:.3e}"
    return f"{p:.{decimals}f}"


def stars_for(p: float, thresholds) -> str:
    if p is None or math.isnan(p):
        return ""
    if p < thresholds[0]:
        return "***"
    if p < thresholds[1]:
        return "**"
    if p < thresholds[2]:
        return "*"
    return ""


def _num(x):
    """JSON-safe float: non-finite values become null."""
    x = float(x)
    return x if math.isfinite(x) else None


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

def load_frame(cfg: ReportConfig) -> Frame:
    f = load_csv(cfg.data_path, cfg.schema)
    if f.nobs == 0:
        raise EmptyFrame(f"{cfg.data_path}: no observations")
    return f


def summary_section(f: Frame, cfg: ReportConfig) -> Section:
    rows, data = [], []
    for r in summary_stats(f):
        d = cfg.decimals.get(r.variable, 4)
        label = cfg.labels.get(r.variable, r.variable)
        source = cfg.sources.get(r.variable, "")
        rows.append((label, source, fmt_fixed(r.minimum, d), fmt_fixed(r.mean, d),
                     fmt_fixed(r.maximum, d)))
        data.append({"variable": r.variable, "label": label, "source": source,
                     "minimum": _num(r.minimum), "mean": _num(r.mean),
                     "maximum": _num(r.maximum), "count": r.count, "decimals": d})
    notes = [f"Sample: {f.start.dotted()} - {f.end.dotted()} ({f.nobs} observations)"]
    logged = [c for c in cfg.schema.variable_columns if c in cfg.schema.log_columns]
    if logged:
        notes.append("Natural log applied at load: " + ", ".join(logged))
    table = RenderedTable("Summary of Dataset Variables",
                          ("Variable", "Source", "Minimum", "Mean", "Maximum"),
                          tuple(rows), tuple(notes))
    records = tuple({k: v for k, v in d.items() if k not in ("label", "decimals")} for d in data)
    return Section("summary", data, table, records=records)


def adf_section(f: Frame, cfg: ReportConfig) -> Section:
    report = stationarity_report(f, cfg.adf_variant, cfg.adf_lags, cfg.adf_selection)
    rows, data = [], []
    for row in report:
        r = row.result
        rows.append((row.label, fmt_fixed(r.statistic, 3),
                     fmt_fixed(r.critical_values["5%"], 2), r.stars))
        data.append({"variable": row.column, "label": row.label,
                     "differenced": row.differenced, "statistic": _num(r.statistic),
                     "lag_order": r.lag_order, "nobs": r.nobs_used,
                     "critical_values": {k: _num(v) for k, v in r.critical_values.items()},
                     "significance": r.significance, "stars": r.stars})
    if cfg.adf_selection == "aic":
        lag_note = ("Lag order: AIC selection up to "
                    + ("the default maximum" if cfg.adf_lags is None else str(cfg.adf_lags)))
    else:
        lag_note = f"Lag order: {cfg.adf_lags or 0} (fixed)"
    notes = (
        f"Deterministic terms: {cfg.adf_variant.value}",
        lag_note,
        "Significance: *** beyond 1% critical value, ** beyond 5%, * beyond 10%",
    )
    table = RenderedTable("Augmented Dickey-Fuller Test Results",
                          ("Variable", "Test Statistic", "Critical Value (5%)", "Significant"),
                          tuple(rows), notes)
    records = tuple({"variable": d["label"], "statistic": d["statistic"],
                     "critical_value_1": d["critical_values"]["1%"],
                     "critical_value_5": d["critical_values"]["5%"],
                     "critical_value_10": d["critical_values"]["10%"],
                     "lag_order": d["lag_order"], "nobs": d["nobs"],
                     "significance": d["significance"]} for d in data)
    return Section("adf", {"variant": cfg.adf_variant.value, "selection": cfg.adf_selection,
                           "lags": cfg.adf_lags, "rows": data}, table, records=records)


def regression_frame(f: Frame, cfg: ReportConfig) -> Frame:
    """Frame the model is fitted on: first differences (names kept) or levels."""
    sub = f.select((cfg.dependent_name, *cfg.regressor_names))
    if not cfg.difference:
        return sub
    return align(diff(s, 1).rename(s.name) for s in sub)


def fit_model(f: Frame, cfg: ReportConfig):
    """Fit the configured model; returns ``(fit, design, hac_config, model_frame)``."""
    mf = regression_frame(f, cfg)
    spec = RegressionSpec(cfg.dependent_name, cfg.regressor_names, True)
    y, X = design_matrix(mf, spec)
    fit = ols(y, X)
    hcfg = cfg.hac
    if cfg.hac_auto_lag:
        hcfg = HacConfig(newey_west_lag(X.T), hcfg.scaling, hcfg.small_sample_adjust)
    return refit_with_hac(fit, X, hcfg), X, hcfg, mf


def regression_section(f: Frame, cfg: ReportConfig, fitted=None) -> Section:
    fit, X, hcfg, mf = fitted or fit_model(f, cfg)
    th = cfg.star_thresholds
    rows, coefs = [], []
    for i, name in enumerate(fit.names):
        p = float(fit.p_values[i])
        st = stars_for(p, th)
        # fixed-width star suffix keeps the p-values right-aligned
        p_cell = f"{fmt_p(p)} {st:<3}"
        rows.append((name, fmt_fixed(fit.coefficients[i], 5), fmt_fixed(fit.std_errors[i], 5),
                     fmt_fixed(fit.t_values[i], 4), p_cell))
        coefs.append({"name": name, "estimate": _num(fit.coefficients[i]),
                      "std_error": _num(fit.std_errors[i]), "t_value": _num(fit.t_values[i]),
                      "p_value": _num(p), "stars": st})
    dep = cfg.dependent_name
    notes = [
        f"Dependent Variable: {dep}" + (" (Differenced)" if cfg.difference else ""),
        "Method: Least Squares",
        f"Sample: {f.start.dotted()} - {f.end.dotted()}",
        f"Included observations: {fit.nobs} after adjustments",
        f"Newey-West HAC Standard Errors & Covariance (lag truncation={hcfg.lag_truncation})",
        f"Significance: *** p<{th[0]:g}, ** p<{th[1]:g}, * p<{th[2]:g}",
    ]
    if hcfg.scaling == hac_mod.LITERAL:
        notes.append("Covariance includes an extra 1/T factor (literal printed formula); "
                     "standard errors are not comparable to conventional Newey-West")
    if hcfg.small_sample_adjust:
        notes.append("Covariance multiplied by T/(T-k) small-sample factor")
    if not cfg.difference:
        notes.append("Warning: regression in levels; with unit-root series the results "
                     "may be spurious")
    for n in fit.notes:
        notes.append(f"Warning: {n}")
    table = RenderedTable("Regression Results with Newey-West Standard Errors",
                          ("Variable", "Estimate", "Std. Error", "t value", "Pr(>|t|)"),
                          tuple(rows), tuple(notes))
    data = {
        "dependent": dep,
        "regressors": list(cfg.regressor_names),
        "differenced": cfg.difference,
        "sample": {"start": str(f.start), "end": str(f.end)},
        "nobs": fit.nobs,
        "df_resid": fit.df_resid,
        "r_squared": _num(fit.r_squared),
        "covariance": {"kind": fit.covariance_kind, "lag_truncation": hcfg.lag_truncation,
                       "scaling": hcfg.scaling,
                       "small_sample_adjust": hcfg.small_sample_adjust},
        "coefficients": coefs,
        "notes": list(notes[6:]),
    }
    return Section("regression", data, table, records=tuple(coefs))


def diagnostics_section(fit) -> Section:
    sw = shapiro_wilk(fit.residuals)
    line = f"Shapiro-Wilk W={fmt_fixed(sw.w_statistic, 5)}, p={fmt_p(sw.p_value, 4)}"
    data = {"shapiro_wilk": {"w": _num(sw.w_statistic), "p_value": _num(sw.p_value),
                             "n": sw.n}}
    rec = {"test": "shapiro_wilk", "statistic": _num(sw.w_statistic),
           "p_value": _num(sw.p_value), "n": sw.n}
    return Section("diagnostics", data, None, (line,), records=(rec,))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_summary(cfg: ReportConfig) -> RenderedTable:
    return summary_section(load_frame(cfg), cfg).table


def cmd_adf(cfg: ReportConfig) -> RenderedTable:
    return adf_section(load_frame(cfg), cfg).table


def cmd_regress(cfg: ReportConfig) -> RenderedTable:
    return regression_section(load_frame(cfg), cfg).table


def sections_for(command: str, cfg: ReportConfig) -> list[Section]:
    f = load_frame(cfg)
    if command == "summary":
        return [summary_section(f, cfg)]
    if command == "adf":
        return [adf_section(f, cfg)]
    if command == "regress":
        return [regression_section(f, cfg)]
    if command == "report":
        fitted = fit_model(f, cfg)
        return [summary_section(f, cfg), adf_section(f, cfg),
                regression_section(f, cfg, fitted), diagnostics_section(fitted[0])]
    raise ValueError(f"unknown command {command!r}")


def cmd_report(cfg: ReportConfig) -> str:
    return render(sections_for("report", cfg), cfg.output_format)


# ---------------------------------------------------------------------------
# renderers
# ---------------------------------------------------------------------------

def render_table_text(t: RenderedTable) -> str:
    widths = [len(h) for h in t.headers]
    for r in t.rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]

    def line(cells):
        out = [cells[0].ljust(widths[0])]
        out += [c.rjust(w) for c, w in zip(cells[1:], widths[1:])]
        return "  ".join(out).rstrip()

    rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
    parts = [t.title, rule, line(t.headers), rule]
    parts += [line(r) for r in t.rows]
    parts.append(rule)
    parts += list(t.footnotes)
    return "\n".join(parts) + "\n"


def render_text(sections: list[Section]) -> str:
    blocks = []
    for s in sections:
        text = render_table_text(s.table) if s.table is not None else ""
        if s.lines:
            text += "\n".join(s.lines) + "\n"
        blocks.append(text)
    return "\n".join(blocks)


def render_json(sections: list[Section]) -> str:
    doc = {s.key: s.data for s in sections}
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False) + "\n"


def render_csv(sections: list[Section]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for i, s in enumerate(sections):
        if len(sections) > 1:
            if i:
                buf.write("\n")
            buf.write(f"# {s.key}\n")
        if not s.records:
            continue
        keys = list(s.records[0].keys())
        w.writerow(keys)
        for rec in s.records:
            w.writerow(["" if rec[k] is None else (repr(rec[k]) if isinstance(rec[k], float)
                                                   else rec[k]) for k in keys])
    return buf.getvalue()


def render(sections: list[Section], fmt: str) -> str:
    if fmt == "text":
        return render_text(sections)
    if fmt == "json":
        return render_json(sections)
    if fmt == "csv":
        return render_csv(sections)
    raise ValueError(f"unknown format {fmt!r}")
