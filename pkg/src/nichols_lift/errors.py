"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class NicholsError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(NicholsError, ZeroDivisionError):
    pass


class FieldMismatch(NicholsError, ValueError):
    pass


class NotASubfieldChain(NicholsError, ValueError):
    pass


class NotHomogeneous(NicholsError, ValueError):
    pass


class ZeroDegree(NicholsError, ValueError):
    pass


class MissingRootData(NicholsError, LookupError):
    pass


class DSLError(NicholsError, ValueError):
    """Parse error carrying a 1-based line/column position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        self.message = message
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(f"{where}{message}")


class PresentationSyntaxError(DSLError):
    pass


class UnknownGenerator(DSLError):
    pass


class NonHomogeneousBracket(DSLError):
    pass


class DuplicateRelationName(DSLError):
    pass


class UnknownCatalogEntry(NicholsError, KeyError):
    def __str__(self) -> str:
        return f"unknown catalog entry: {self.args[0]!r}"


class BudgetExceeded(NicholsError, RuntimeError):
    pass


class CorruptTrace(NicholsError, ValueError):
    pass


class UnknownParameter(NicholsError, KeyError):
    def __str__(self) -> str:
        return f"unknown deformation parameter: {self.args[0]!r}"


class InadmissibleParameter(NicholsError, ValueError):
    pass


class IllegalCut(NicholsError, ValueError):
    pass


class IllegalProjection(NicholsError, ValueError):
    pass


class NotLinkable(NicholsError, ValueError):
    pass


class NeedsRealization(NicholsError, ValueError):
    pass


class NonPrimitiveStratumDeformed(NicholsError, ValueError):
    pass


class RankTooLarge(NicholsError, ValueError):
    pass


class UnsupportedParameters(NicholsError, ValueError):
    pass


class InadmissibleParameterWarning(UserWarning):
    """Emitted when a deformation parameter violates admissibility."""
