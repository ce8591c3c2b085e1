"""Exception hierarchy shared by every pentahole module."""

from __future__ import annotations


class PentaholeError(Exception):
    """Base class for all library errors."""


class InvalidInput(PentaholeError):
    """Input that can never be processed (maps to CLI exit code 2)."""


class DuplicatePoint(InvalidInput):
    def __init__(self, i: int, j: int, lines: tuple[int, ...] | None = None):
        self.i, self.j = i, j
        self.lines = lines
        where = f" (source lines {lines[0]},{lines[1]})" if lines else ""
        super().__init__(f"duplicate points at indices {i} and {j}{where}")


class CollinearTriple(InvalidInput):
    def __init__(self, i: int, j: int, k: int, lines: tuple[int, ...] | None = None):
        self.i, self.j, self.k = i, j, k
        self.lines = lines
        where = f" (source lines {','.join(map(str, lines))})" if lines else ""
        super().__init__(f"collinear points at indices {i}, {j}, {k}{where}")

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)


class CoordinateOverflow(InvalidInput):
    def __init__(self, index: int, line: int | None = None):
        self.index = index
        self.line = line
        where = f" (source line {line})" if line else ""
        super().__init__(f"coordinate magnitude exceeds C_MAX at index {index}{where}")


class ParseError(InvalidInput):
    def __init__(self, line: int, message: str = "expected two integers"):
        self.line = line
        super().__init__(f"line {line}: {message}")


class TooFewPoints(InvalidInput):
    pass


class WitnessOnLine(InvalidInput):
    pass


class NotEnoughPointsInRegion(PentaholeError):
    pass


class PreconditionViolated(InvalidInput):
    pass


class SubsetNotInHost(InvalidInput):
    pass


class PointNotInSet(InvalidInput):
    pass


class SizeMismatch(InvalidInput):
    pass


class HullTooSmall(InvalidInput):
    pass


class NotADoublingSize(InvalidInput):
    pass


class NoConvexHexagonFound(PentaholeError):
    pass


class BudgetExceeded(PentaholeError):
    pass


class Unsatisfiable(InvalidInput):
    pass


class ContractViolation(PentaholeError):
    """A guaranteed construction failed on valid input: always an implementation bug."""


class StructuredSearchFailed(ContractViolation):
    """A constructive routine could not produce its promised hole."""


class IoError(PentaholeError):
    """A file could not be read or written."""
