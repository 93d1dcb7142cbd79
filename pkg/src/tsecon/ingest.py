"""Loading the quarterly dataset and describing it.

The on-disk layout is wide: one row per quarter, a period column plus one
column per variable::

    period,REER,USLR,M2,CPI,WIR
    2001Q4,101.3,4.75,25.61,3.9,4.77

Period strings may be ``2001Q4``, ``2001.Q4`` or ``2001-Q4`` (any case).
Rows may come in any order; after sorting they must be contiguous and
unique. Columns listed in ``log_columns`` are replaced by their natural log
at load time, so the frame carries ``M2`` already in logs.
"""

from __future__ import annotations

import csv
import io
import math
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BadPeriodFormat,
    DataFileNotFound,
    DuplicatePeriod,
    EmptyFrame,
    GapInPeriods,
    MissingColumn,
    NonNumericCell,
    NonPositiveValue,
)
from .timeseries import Frame, Period, Series, log_transform

DEFAULT_VARIABLES = ("REER", "USLR", "M2", "CPI", "WIR")

# C-locale decimal, optional exponent; no thousands separators, no nan/inf
_NUMBER_RE = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


@dataclass(frozen=True)
class DatasetSchema:
    period_column: str = "period"
    variable_columns: tuple[str, ...] = DEFAULT_VARIABLES
    log_columns: frozenset[str] = frozenset({"M2"})

    def __post_init__(self):
        cols = tuple(self.variable_columns)
        object.__setattr__(self, "variable_columns", cols)
        object.__setattr__(self, "log_columns", frozenset(self.log_columns))
        if not cols:
            raise ValueError("schema needs at least one variable column")
        if len(set(cols)) != len(cols):
            raise ValueError("variable column names must be unique")
        if self.period_column in cols:
            raise ValueError("period column cannot also be a variable column")
        unknown = self.log_columns - set(cols)
        if unknown:
            raise ValueError(f"log columns not among variables: {sorted(unknown)}")


@dataclass(frozen=True)
class SummaryRow:
    variable: str
    minimum: float
    mean: float
    maximum: float
    count: int


@dataclass(frozen=True)
class Finding:
    kind: str          # "ZeroVariance" | "LargeJump"
    column: str
    severity: str      # "error" | "warning"
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    nobs: int
    findings: tuple[Finding, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.findings

    def kinds(self) -> list[str]:
        return [f.kind for f in self.findings]


def parse_number(text: str, row: int, col: str) -> float:
    s = text.strip()
    if not _NUMBER_RE.match(s):
        raise NonNumericCell(row, col, text)
    return float(s)


def _read_rows(path) -> list[list[str]]:
    p = Path(path)
    if not p.is_file():
        raise DataFileNotFound(p)
    with open(p, encoding="utf-8-sig", newline="") as fh:
        return list(csv.reader(fh))


def load_csv(path, schema: DatasetSchema | None = None) -> Frame:
    """Read a wide quarterly CSV into a :class:`Frame`.

    Row numbers in error messages are 1-based file lines (the header is
    line 1).
    """
    schema = schema or DatasetSchema()
    rows = _read_rows(path)
    if not rows:
        raise MissingColumn(schema.period_column)
    header = [h.strip() for h in rows[0]]
    index = {}
    for pos, h in enumerate(header):
        index.setdefault(h, pos)
    for name in (schema.period_column, *schema.variable_columns):
        if name not in index:
            raise MissingColumn(name)

    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        cells = row + [""] * (len(header) - len(row))
        ptext = cells[index[schema.period_column]]
        try:
            period = Period.parse(ptext)
        except ValueError:
            raise BadPeriodFormat(lineno, ptext) from None
        values = [parse_number(cells[index[v]], lineno, v) for v in schema.variable_columns]
        records.append((period, values))

    if not records:
        raise EmptyFrame(f"{path}: no data rows")
    records.sort(key=lambda r: r[0])
    for (p0, _), (p1, _) in zip(records, records[1:]):
        if p1 == p0:
            raise DuplicatePeriod(p1)
        if p1 != p0.successor():
            raise GapInPeriods(p0.successor())

    start = records[0][0]
    data = np.array([r[1] for r in records], dtype=np.float64)
    columns = []
    for j, name in enumerate(schema.variable_columns):
        s = Series(name, start, data[:, j])
        if name in schema.log_columns:
            try:
                s = log_transform(s).rename(name)
            except NonPositiveValue as exc:
                raise NonPositiveValue(exc.index, exc.value,
                                       f"{name} at {start.shift(exc.index)}") from None
        columns.append(s)
    return Frame(tuple(columns))


def write_csv(frame: Frame, target=None, period_column: str = "period") -> str | None:
    """Write ``frame`` in the canonical wide layout (LF endings, 17 significant digits).

    ``target`` may be a path, a text stream, or ``None`` to return the text.
    Values are written as stored, so logged columns stay logged; re-load such
    a file with a schema whose ``log_columns`` is empty.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([period_column, *frame.names])
    arr = frame.to_array()
    for period, row in zip(frame.periods(), arr):
        w.writerow([str(period), *(format(float(v), ".17g") for v in row)])
    text = buf.getvalue()
    if target is None:
        return text
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        target.write(text)
    return None


def summary_stats(f: Frame) -> list[SummaryRow]:
    if f is None or f.nobs == 0 or not f.columns:
        raise EmptyFrame("cannot summarise an empty frame")
    out = []
    for s in f:
        v = s.values
        lo = float(v.min())
        hi = float(v.max())
        mean = math.fsum(v.tolist()) / len(v)
        # fsum is correctly rounded; the division can still step one ulp outside
        mean = min(max(mean, lo), hi)
        out.append(SummaryRow(s.name, lo, mean, hi, len(v)))
    return out


JUMP_THRESHOLD = 10.0


def _robust_scale(x: np.ndarray) -> float:
    med = np.median(x)
    mad = 1.4826 * float(np.median(np.abs(x - med)))
    if mad > 0:
        return mad
    return float(np.std(x, ddof=1)) if x.size > 1 else 0.0


def validate(f: Frame) -> ValidationReport:
    """Report-only checks: zero-variance columns and implausibly large jumps.

    A jump is a quarter-on-quarter change larger than ``JUMP_THRESHOLD``
    standard deviations of the column's changes. The standard deviation is
    estimated from the median absolute deviation so that a single outlier
    cannot mask itself.
    """
    findings = []
    for s in f:
        v = s.values
        if v.size < 2 or float(np.ptp(v)) == 0.0:
            findings.append(Finding("ZeroVariance", s.name, "error",
                                    "constant column; breaks regression"))
            continue
        d = np.diff(v)
        scale = _robust_scale(d)
        if scale <= 0:
            continue
        dev = np.abs(d - np.median(d)) / scale
        for i in np.flatnonzero(dev > JUMP_THRESHOLD):
            period = s.start.shift(int(i) + 1)
            findings.append(Finding("LargeJump", s.name, "warning",
                                    f"change of {d[i]:.6g} at {period} "
                                    f"({dev[i]:.1f} robust sd)"))
    return ValidationReport(f.nobs, tuple(findings))
