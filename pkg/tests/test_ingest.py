import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from tsecon.errors import (
    BadPeriodFormat,
    DataFileNotFound,
    DuplicatePeriod,
    EmptyFrame,
    GapInPeriods,
    MissingColumn,
    NonNumericCell,
    NonPositiveValue,
)
from tsecon.ingest import DatasetSchema, load_csv, summary_stats, validate, write_csv
from tsecon.timeseries import Period, from_arrays

DATA = Path(__file__).parent / "data"
HEADER = "period,REER,USLR,M2,CPI,WIR\n"


def write(tmp_path, text, name="in.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def three_rows(tmp_path):
    return write(tmp_path, HEADER
                 + "2001Q4,95.1,4.75,1000,5.0,4.8\n"
                 + "2002Q1,96.2,4.50,1100,4.5,4.7\n"
                 + "2002Q2,94.0,4.25,1210,4.0,4.6\n")


def test_happy_path(tmp_path):
    f = load_csv(three_rows(tmp_path))
    assert f.nobs == 3
    assert f.names == ["REER", "USLR", "M2", "CPI", "WIR"]
    assert f.start == Period(2001, 4)
    assert_allclose(f["M2"].values, np.log([1000, 1100, 1210]), rtol=1e-15)
    assert_array_equal(f["REER"].values, [95.1, 96.2, 94.0])


def test_rows_are_sorted(tmp_path):
    p = write(tmp_path, "period,A\n2002Q1,2\n2001.Q4,1\n2002-q2,3\n")
    f = load_csv(p, DatasetSchema(variable_columns=("A",), log_columns=frozenset()))
    assert_array_equal(f["A"].values, [1, 2, 3])


def test_bom_and_crlf(tmp_path):
    p = tmp_path / "bom.csv"
    p.write_bytes(b"\xef\xbb\xbfperiod,A\r\n2001Q4,1\r\n2002Q1,2\r\n")
    f = load_csv(p, DatasetSchema(variable_columns=("A",), log_columns=frozenset()))
    assert f.nobs == 2


def test_missing_file(tmp_path):
    with pytest.raises(DataFileNotFound) as info:
        load_csv(tmp_path / "nope.csv")
    assert "nope.csv" in str(info.value)
    assert isinstance(info.value, FileNotFoundError)


def test_missing_column(tmp_path):
    p = write(tmp_path, "period,REER,USLR,M2,WIR\n2001Q4,1,2,3,4\n")
    with pytest.raises(MissingColumn) as info:
        load_csv(p)
    assert info.value.name == "CPI"


def test_gap(tmp_path):
    p = write(tmp_path, HEADER + "2001Q4,1,1,1,1,1\n2002Q2,1,1,1,1,1\n")
    with pytest.raises(GapInPeriods) as info:
        load_csv(p)
    assert info.value.period == Period(2002, 1)


def test_duplicate_period(tmp_path):
    p = write(tmp_path, HEADER + "2001Q4,1,1,1,1,1\n2001.Q4,2,1,1,1,1\n")
    with pytest.raises(DuplicatePeriod):
        load_csv(p)


def test_bad_period_reports_file_line(tmp_path):
    p = write(tmp_path, HEADER + "2001Q4,1,1,1,1,1\n2002Q5,1,1,1,1,1\n")
    with pytest.raises(BadPeriodFormat) as info:
        load_csv(p)
    assert info.value.row == 3


@pytest.mark.parametrize("cell", ["abc", "1,5", "nan", "inf", "", "1.2.3"])
def test_non_numeric(tmp_path, cell):
    p = write(tmp_path, 'period,A\n2001Q4,1\n2002Q1,"%s"\n' % cell)
    with pytest.raises(NonNumericCell) as info:
        load_csv(p, DatasetSchema(variable_columns=("A",), log_columns=frozenset()))
    assert (info.value.row, info.value.col) == (3, "A")


def test_non_positive_log_column(tmp_path):
    p = write(tmp_path, HEADER + "2001Q4,1,1,5,1,1\n2002Q1,1,1,0,1,1\n")
    with pytest.raises(NonPositiveValue) as info:
        load_csv(p)
    assert "2002Q1" in str(info.value)


def test_header_only(tmp_path):
    with pytest.raises(EmptyFrame):
        load_csv(write(tmp_path, HEADER))


def test_schema_validation():
    with pytest.raises(ValueError):
        DatasetSchema(variable_columns=("A", "A"))
    with pytest.raises(ValueError):
        DatasetSchema(variable_columns=("A",), log_columns=frozenset({"B"}))


def test_deterministic(tmp_path):
    p = three_rows(tmp_path)
    assert load_csv(p) == load_csv(p)


def test_bundled_fixture():
    f = load_csv(DATA / "synthetic_quarterly.csv")
    assert f.nobs == 80
    assert f.start == Period(2001, 4) and f.end == Period(2021, 3)
    assert validate(f).ok


class TestWriteCsv:
    def test_format(self):
        f = from_arrays("2001Q4", {"A": [0.1, 2.0]})
        assert write_csv(f) == "period,A\n2001Q4,0.10000000000000001\n2002Q1,2\n"

    @settings(max_examples=40)
    @given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64),
                    min_size=1, max_size=20))
    def test_round_trip_bitwise(self, tmp_path_factory, xs):
        f = from_arrays("1999Q2", {"A": xs, "B": [-v for v in xs]})
        p = tmp_path_factory.mktemp("rt") / "f.csv"
        write_csv(f, p)
        back = load_csv(p, DatasetSchema(variable_columns=("A", "B"), log_columns=frozenset()))
        assert back == f


class TestSummary:
    def test_simple(self):
        row, = summary_stats(from_arrays("2001Q4", {"A": [1, 2, 3]}))
        assert (row.minimum, row.mean, row.maximum, row.count) == (1, 2, 3, 3)

    def test_constant(self):
        row, = summary_stats(from_arrays("2001Q4", {"A": [4, 4]}))
        assert row.minimum == row.mean == row.maximum == 4

    def test_order_follows_frame(self):
        rows = summary_stats(from_arrays("2001Q4", {"B": [1, 2], "A": [3, 4]}))
        assert [r.variable for r in rows] == ["B", "A"]

    @given(st.lists(st.floats(-1e12, 1e12), min_size=1, max_size=50))
    def test_agrees_with_fold(self, xs):
        row, = summary_stats(from_arrays("2001Q4", {"A": xs}))
        assert row.minimum == min(xs) and row.maximum == max(xs)
        ref = math.fsum(xs) / len(xs)
        assert row.mean == pytest.approx(ref, rel=1e-12, abs=1e-300)
        assert row.minimum <= row.mean <= row.maximum


class TestValidate:
    def test_constant_column(self):
        rep = validate(from_arrays("2001Q4", {"A": [1, 2, 3], "B": [5, 5, 5]}))
        assert rep.kinds() == ["ZeroVariance"]
        assert rep.findings[0].column == "B"
        assert rep.nobs == 3

    def test_large_jump(self):
        rng = np.random.default_rng(7)
        x = 100 + rng.normal(0, 5, 100)
        x[60] = 1e9
        rep = validate(from_arrays("2001Q4", {"A": x}))
        assert "LargeJump" in rep.kinds()
        assert all(f.severity == "warning" for f in rep.findings)

    def test_clean_random_walk(self):
        rng = np.random.default_rng(3)
        rep = validate(from_arrays("2001Q4", {"A": np.cumsum(rng.normal(size=80))}))
        assert rep.ok and rep.nobs == 80
