"""Command-line entry point.

    tsecon summary|adf|regress|report --data FILE [options]

Settings are resolved as: command-line flag, then ``--config`` file
(``key = value`` lines, ``#`` comments, keys spelled like the long options
without the leading dashes), then built-in defaults. ``TSECON_DATA``
supplies the data path when neither flag nor config file does.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical/model error.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys

from . import __version__
from .errors import DataError, ModelError
from .hac import LITERAL, STANDARD, HacConfig
from .ingest import DEFAULT_VARIABLES, DatasetSchema
from .report import ReportConfig, render, sections_for

ENV_DATA = "TSECON_DATA"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_MODEL = 3

COMMANDS = ("summary", "adf", "regress", "report")

CONFIG_KEYS = {
    "data", "diff", "no-diff", "hac-lag", "hac-scaling", "small-sample", "adf-variant",
    "adf-lags", "format", "config", "dependent", "regressors", "columns", "log-columns",
    "period-column",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)  # sys.stderr may be redirected by main()
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", metavar="CSV", help=f"input CSV (fallback: ${ENV_DATA})")
    common.add_argument("--config", metavar="PATH", help="key=value settings file")
    diff = common.add_mutually_exclusive_group()
    diff.add_argument("--diff", dest="diff", action="store_const", const=True, default=None,
                      help="first-difference all series before the regression (default)")
    diff.add_argument("--no-diff", dest="diff", action="store_const", const=False,
                      help="fit the regression in levels")
    common.add_argument("--hac-lag", metavar="N|auto",
                        help="Newey-West lag truncation (default 4); 'auto' uses "
                             "floor(4 (T/100)^(2/9))")
    common.add_argument("--hac-scaling", choices=("standard", "paper"),
                        help="'standard' sandwich (default) or the literal formula with 1/T")
    common.add_argument("--small-sample", action="store_const", const=True, default=None,
                        help="multiply the HAC covariance by T/(T-k)")
    common.add_argument("--adf-variant", choices=("none", "constant", "trend"),
                        help="deterministic terms in the ADF regression (default none)")
    common.add_argument("--adf-lags", metavar="N|aic[:N]",
                        help="fixed ADF lag order, or AIC selection up to N (default 0)")
    common.add_argument("--format", choices=("text", "json", "csv"), help="output format")
    common.add_argument("--dependent", help="dependent variable (default: first column)")
    common.add_argument("--regressors", metavar="A,B,...",
                        help="regressors (default: all other columns)")
    common.add_argument("--columns", metavar="A,B,...",
                        help="variable columns to read (default: "
                             + ",".join(DEFAULT_VARIABLES) + ")")
    common.add_argument("--log-columns", metavar="A,B,...",
                        help="columns to log-transform at load (default: M2; '' for none)")
    common.add_argument("--period-column", help="name of the period column (default: period)")

    parser = _Parser(prog="tsecon",
                     description="Quarterly macro econometrics: summary statistics, ADF "
                                 "unit-root tests, OLS with Newey-West standard errors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    helps = {
        "summary": "descriptive statistics per variable",
        "adf": "ADF tests in levels and first differences",
        "regress": "OLS with Newey-West HAC standard errors",
        "report": "all of the above plus Shapiro-Wilk on the residuals",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def read_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror or exc}") from None
    out = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("_", "-").lower()
        if key not in CONFIG_KEYS or key == "config":
            raise UsageError(f"{path}:{lineno}: unknown setting {key!r}")
        out[key] = value
    return out


def _truthy(value: str, key: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"{key}: expected a boolean, got {value!r}")


def _names(value: str) -> tuple[str, ...]:
    return tuple(n.strip() for n in value.split(",") if n.strip())


def _parse_adf_lags(value: str):
    v = value.strip().lower()
    if v == "aic":
        return None, "aic"
    if v.startswith("aic:"):
        n = v[4:]
        if not n.isdigit():
            raise UsageError(f"--adf-lags: bad maximum in {value!r}")
        return int(n), "aic"
    if not v.isdigit():
        raise UsageError(f"--adf-lags: expected N, aic or aic:N, got {value!r}")
    return int(v), "fixed"


def resolve_config(args: argparse.Namespace, environ=None) -> ReportConfig:
    environ = os.environ if environ is None else environ
    file_cfg = read_config_file(args.config) if args.config else {}

    def pick(flag_value, key):
        if flag_value is not None:
            return flag_value
        return file_cfg.get(key)

    data = pick(args.data, "data") or environ.get(ENV_DATA)
    if not data:
        raise UsageError(f"no input data: pass --data, set it in --config, or set {ENV_DATA}")

    difference = args.diff
    if difference is None:
        if "no-diff" in file_cfg:
            difference = not _truthy(file_cfg["no-diff"], "no-diff")
        elif "diff" in file_cfg:
            difference = _truthy(file_cfg["diff"], "diff")
        else:
            difference = True

    lag_text = pick(args.hac_lag, "hac-lag") or "4"
    auto = lag_text.strip().lower() == "auto"
    if not auto and not lag_text.strip().isdigit():
        raise UsageError(f"--hac-lag: expected a non-negative integer or 'auto', got {lag_text!r}")
    scaling_text = pick(args.hac_scaling, "hac-scaling") or "standard"
    if scaling_text not in ("standard", "paper"):
        raise UsageError(f"--hac-scaling: expected standard or paper, got {scaling_text!r}")
    small = args.small_sample
    if small is None:
        small = False
        if "small-sample" in file_cfg:
            small = _truthy(file_cfg["small-sample"], "small-sample")
    hac = HacConfig(0 if auto else int(lag_text), LITERAL if scaling_text == "paper" else STANDARD,
                    small)

    variant = pick(args.adf_variant, "adf-variant") or "none"
    adf_lags, selection = _parse_adf_lags(pick(args.adf_lags, "adf-lags") or "0")

    columns = pick(args.columns, "columns")
    variables = _names(columns) if columns else DEFAULT_VARIABLES
    logs = pick(args.log_columns, "log-columns")
    log_columns = _names(logs) if logs is not None else tuple(c for c in ("M2",) if c in variables)
    period_column = pick(args.period_column, "period-column") or "period"
    regressors = pick(args.regressors, "regressors")

    try:
        schema = DatasetSchema(period_column, variables, frozenset(log_columns))
        return ReportConfig(
            data_path=data, schema=schema, difference=difference, hac=hac, hac_auto_lag=auto,
            adf_variant=variant, adf_lags=adf_lags, adf_selection=selection,
            output_format=pick(args.format, "format") or "text",
            dependent=pick(args.dependent, "dependent"),
            regressors=_names(regressors) if regressors else None,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def main(argv=None, stdout=None, stderr=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(stderr)
        print("tsecon: error: a command is required", file=stderr)
        return EXIT_USAGE
    cfg = None
    try:
        cfg = resolve_config(args, environ)
        out = render(sections_for(args.command, cfg), cfg.output_format)
    except UsageError as exc:
        print(f"tsecon: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        where = f"{cfg.data_path}: " if cfg is not None else ""
        print(f"tsecon: data error: {where}{exc}", file=stderr)
        return EXIT_DATA
    except ModelError as exc:
        print(f"tsecon: model error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_MODEL
    stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
