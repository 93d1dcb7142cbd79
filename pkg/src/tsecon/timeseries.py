"""Quarterly series, frames and deterministic transforms.

A :class:`Series` is a contiguous run of quarterly observations: it stores a
start :class:`Period` and a value vector, and the i-th value belongs to
``start.shift(i)``. Gaps cannot be represented, so every downstream formula
can assume consecutive ``t``.

All objects are immutable after construction (value arrays are flagged
read-only).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DuplicateName,
    EmptyFrame,
    NonFiniteValue,
    NonPositiveValue,
    NoOverlap,
    SeriesTooShort,
    ShapeMismatch,
)

_PERIOD_RE = re.compile(r"^\s*(\d{4})\s*[.\-]?\s*[Qq]\s*([1-4])\s*$")


@dataclass(frozen=True, order=True)
class Period:
    """A calendar quarter; ordering is (year, quarter) lexicographic."""

    year: int
    quarter: int

    def __post_init__(self):
        if not 1 <= self.quarter <= 4:
            raise ValueError(f"quarter must be in 1..4, got {self.quarter}")

    @classmethod
    def parse(cls, text: str) -> "Period":
        """Parse ``2001Q4``, ``2001.Q4``, ``2001-q4`` and similar."""
        m = _PERIOD_RE.match(text)
        if m is None:
            raise ValueError(f"cannot parse period {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @property
    def ordinal(self) -> int:
        return self.year * 4 + (self.quarter - 1)

    @classmethod
    def from_ordinal(cls, n: int) -> "Period":
        year, q = divmod(n, 4)
        return cls(year, q + 1)

    def shift(self, n: int) -> "Period":
        return Period.from_ordinal(self.ordinal + n)

    def successor(self) -> "Period":
        return self.shift(1)

    def __sub__(self, other: "Period") -> int:
        return self.ordinal - other.ordinal

    def __str__(self) -> str:
        return f"{self.year}Q{self.quarter}"

    def dotted(self) -> str:
        return f"{self.year}.Q{self.quarter}"


def _frozen_array(values, name) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise NonFiniteValue(int(bad[0]), name)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Series:
    name: str
    start: Period
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.name:
            raise ValueError("series name must be non-empty")
        arr = _frozen_array(self.values, self.name)
        if arr.size < 1:
            raise SeriesTooShort(0, 1)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.name == other.name and self.start == other.start
                and np.array_equal(self.values, other.values))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Series({self.name!r}, {self.start}..{self.end}, n={len(self)})"

    @property
    def end(self) -> Period:
        return self.start.shift(len(self) - 1)

    def periods(self) -> list[Period]:
        return [self.start.shift(i) for i in range(len(self))]

    def rename(self, name: str) -> "Series":
        return Series(name, self.start, self.values)

    def window(self, first: Period, last: Period) -> "Series":
        """Sub-series covering ``first..last`` (inclusive); both must lie inside."""
        i0 = first - self.start
        i1 = last - self.start
        if i0 < 0 or i1 >= len(self) or i1 < i0:
            raise NoOverlap(f"{first}..{last} is not inside {self.start}..{self.end}")
        return Series(self.name, first, self.values[i0:i1 + 1])


def diff_name(name: str, order: int = 1) -> str:
    return f"D.{name}" if order == 1 else f"D{order}.{name}"


def diff(s: Series, order: int = 1) -> Series:
    """``order``-th difference, dated at the later period."""
    if order < 1:
        raise ValueError("difference order must be >= 1")
    if len(s) <= order:
        raise SeriesTooShort(len(s), order + 1)
    return Series(diff_name(s.name, order), s.start.shift(order), np.diff(s.values, n=order))


def lag(s: Series, k: int = 1) -> Series:
    """Shift forward ``k`` quarters: the value dated t is ``s`` at t-k."""
    if k < 1:
        raise ValueError("lag must be >= 1")
    if len(s) <= k:
        raise SeriesTooShort(len(s), k + 1)
    return Series(f"L{k}.{s.name}" if k > 1 else f"L.{s.name}", s.start.shift(k), s.values[:-k])


def log_transform(s: Series) -> Series:
    bad = np.flatnonzero(s.values <= 0)
    if bad.size:
        i = int(bad[0])
        raise NonPositiveValue(i, float(s.values[i]), s.name)
    return Series(f"log({s.name})", s.start, np.log(s.values))


def integrate(d: Series, initial: float, name: str | None = None) -> Series:
    """Inverse of a first difference: rebuild levels from ``initial`` and ``d``."""
    levels = np.empty(len(d) + 1)
    levels[0] = initial
    np.cumsum(d.values, out=levels[1:])
    levels[1:] += initial
    return Series(name or d.name, d.start.shift(-1), levels)


@dataclass(frozen=True, eq=False)
class Frame:
    """Period-aligned, rectangular collection of series with unique names."""

    columns: tuple[Series, ...]

    def __post_init__(self):
        cols = tuple(self.columns)
        if not cols:
            raise EmptyFrame("frame has no columns")
        seen = set()
        for c in cols:
            if c.name in seen:
                raise DuplicateName(c.name)
            seen.add(c.name)
        first = cols[0]
        for c in cols[1:]:
            if c.start != first.start or len(c) != len(first):
                raise ShapeMismatch(
                    f"column {c.name!r} spans {c.start}..{c.end}, "
                    f"expected {first.start}..{first.end}")
        object.__setattr__(self, "columns", cols)

    @property
    def start(self) -> Period:
        return self.columns[0].start

    @property
    def end(self) -> Period:
        return self.columns[0].end

    @property
    def nobs(self) -> int:
        return len(self.columns[0])

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def periods(self) -> list[Period]:
        return self.columns[0].periods()

    def __len__(self) -> int:
        return self.nobs

    def __iter__(self) -> Iterator[Series]:
        return iter(self.columns)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def __getitem__(self, name: str) -> Series:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        return len(self.columns) == len(other.columns) and all(
            a == b for a, b in zip(self.columns, other.columns))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Frame({self.start}..{self.end}, n={self.nobs}, columns={self.names})"

    def select(self, names: Sequence[str]) -> "Frame":
        return Frame(tuple(self[n] for n in names))

    def to_array(self, names: Sequence[str] | None = None) -> np.ndarray:
        names = self.names if names is None else names
        return np.column_stack([self[n].values for n in names])

    def map(self, fn) -> "Frame":
        return align([fn(c) for c in self.columns])


def align(columns: Iterable[Series]) -> Frame:
    """Truncate every series to the common period window."""
    cols = list(columns)
    if not cols:
        raise EmptyFrame("nothing to align")
    seen = set()
    for c in cols:
        if c.name in seen:
            raise DuplicateName(c.name)
        seen.add(c.name)
    first = max(c.start for c in cols)
    last = min(c.end for c in cols)
    if last < first:
        raise NoOverlap("series have no common period")
    return Frame(tuple(c if (c.start == first and c.end == last) else c.window(first, last)
                       for c in cols))


def from_arrays(start: Period | str, data: dict[str, Sequence[float]]) -> Frame:
    """Convenience constructor: equal-length arrays keyed by name."""
    if isinstance(start, str):
        start = Period.parse(start)
    return Frame(tuple(Series(name, start, vals) for name, vals in data.items()))


def quarters_between(first: Period, last: Period) -> int:
    """Inclusive count of quarters in ``first..last``."""
    return last - first + 1 if last >= first else 0
