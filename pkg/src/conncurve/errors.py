"""Exception types raised by conncurve.

Every domain error derives from :class:`ConncurveError`, so callers can
catch one type at an API boundary. Validation errors carry the offending
indices as attributes.
"""

from __future__ import annotations


class ConncurveError(Exception):
    """Base class for all conncurve domain errors."""


class NotSquareError(ConncurveError):
    def __init__(self, rows: int, cols: int):
        super().__init__(f"matrix is not square: {rows} rows, {cols} columns")
        self.rows = rows
        self.cols = cols


class AsymmetricEntryError(ConncurveError):
    def __init__(self, i: int, j: int, a: float, b: float):
        super().__init__(f"asymmetric entries at ({i}, {j}): {a!r} != {b!r}")
        self.i = i
        self.j = j


class NonPositiveEntryError(ConncurveError):
    def __init__(self, i: int, j: int, value: float):
        super().__init__(f"entry ({i}, {j}) = {value!r} is not a positive real or infinity")
        self.i = i
        self.j = j
        self.value = value


class FiniteDiagonalError(ConncurveError):
    def __init__(self, i: int, value: float):
        super().__init__(f"diagonal entry ({i}, {i}) = {value!r} must be infinite")
        self.i = i
        self.value = value


class NegativeLengthError(ConncurveError):
    def __init__(self, i: int, j: int, value: float):
        super().__init__(f"shared boundary length ({i}, {j}) = {value!r} is negative")
        self.i = i
        self.j = j
        self.value = value


class NonPositiveThresholdError(ConncurveError):
    def __init__(self, value: float):
        super().__init__(f"threshold must be a positive real, got {value!r}")
        self.value = value


class AllInfiniteError(ConncurveError):
    def __init__(self):
        super().__init__("matrix has no finite off-diagonal entry; nothing to normalize")


class IndexOutOfRangeError(ConncurveError):
    def __init__(self, index: int, n: int):
        super().__init__(f"index {index} out of range for {n} points")
        self.index = index
        self.n = n


class TooLargeForOracleError(ConncurveError):
    def __init__(self, n: int, limit: int):
        super().__init__(
            f"exhaustive oracle is capped at n <= {limit} points, got n = {n}"
        )
        self.n = n
        self.limit = limit


class DegenerateCurveError(ConncurveError):
    def __init__(self, reason: str):
        super().__init__(f"degenerate connectivity curve: {reason}")


class ParseError(ConncurveError):
    def __init__(self, message: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"parse error{where}: {message}")
        self.line = line


class SymmetrizationRejectedError(ConncurveError):
    def __init__(self, i: int, j: int, a: float, b: float):
        super().__init__(
            f"input is not symmetric at ({i}, {j}): {a!r} != {b!r}; "
            "pass symmetrize='sum' to aggregate directed values"
        )
        self.i = i
        self.j = j
