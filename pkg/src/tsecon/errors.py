"""Exception hierarchy.

Two families matter to callers: :class:`DataError` (bad or unusable input
data; CLI exit code 2) and :class:`ModelError` (numerical or model failure;
CLI exit code 3).
"""


class TsEconError(Exception):
    """Base class for all package errors."""


class DataError(TsEconError):
    pass


class ModelError(TsEconError):
    pass


# -- timeseries -------------------------------------------------------------

class SeriesTooShort(DataError):
    def __init__(self, length, required):
        self.length = length
        self.required = required
        super().__init__(f"series has {length} observations, at least {required} required")


class NonPositiveValue(DataError):
    def __init__(self, index, value=None, name=None):
        self.index = index
        self.value = value
        self.name = name
        where = f" in {name!r}" if name else ""
        super().__init__(f"non-positive value {value!r} at index {index}{where}; cannot take log")


class NonFiniteValue(DataError):
    def __init__(self, index, name=None):
        self.index = index
        self.name = name
        super().__init__(f"non-finite value at index {index} in series {name!r}")


class NoOverlap(DataError):
    pass


class DuplicateName(DataError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate column name {name!r}")


class ShapeMismatch(DataError):
    pass


# -- ingest -----------------------------------------------------------------

class DataFileNotFound(DataError, FileNotFoundError):
    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"data file not found: {self.path}")

    def __str__(self):
        return f"data file not found: {self.path}"


class MissingColumn(DataError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"missing column {name!r}")


class BadPeriodFormat(DataError):
    def __init__(self, row, text):
        self.row = row
        self.text = text
        super().__init__(f"row {row}: cannot parse period {text!r} (expected e.g. 2001Q4)")


class NonNumericCell(DataError):
    def __init__(self, row, col, text):
        self.row = row
        self.col = col
        self.text = text
        super().__init__(f"row {row}, column {col!r}: non-numeric cell {text!r}")


class GapInPeriods(DataError):
    def __init__(self, period):
        self.period = period
        super().__init__(f"gap in quarterly periods: {period} is missing")


class DuplicatePeriod(DataError):
    def __init__(self, period):
        self.period = period
        super().__init__(f"duplicate period {period}")


class EmptyFrame(DataError):
    pass


# -- linreg -----------------------------------------------------------------

class RankDeficient(ModelError):
    pass


class TooFewObservations(ModelError):
    pass


class ZeroStandardError(ModelError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"standard error of coefficient {index} is zero")


class DegenerateDependent(ModelError):
    pass


# -- hac --------------------------------------------------------------------

class LagOutOfRange(ModelError):
    pass


class LagTooLarge(ModelError):
    pass


class DimensionMismatch(ModelError):
    pass


class NegativeDiagonal(ModelError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"covariance diagonal entry {index} is negative ({value:.3e})")


# -- unitroot / normality ---------------------------------------------------

class ZeroVariance(ModelError):
    def __init__(self, name=None):
        self.name = name
        what = f" {name!r}" if name else ""
        super().__init__(f"series{what} has zero variance")


class SampleTooSmall(ModelError):
    pass


class SampleTooLarge(ModelError):
    pass
