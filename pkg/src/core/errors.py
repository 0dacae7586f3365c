# core/errors.py
"""
Error hierarchy shared by every geored module.

Each class carries the process exit code the CLI uses for it:
    1  a check failed
    2  manifest / schema / flag input error
    3  expression, domain or geometry error
"""

from typing import Optional


class GeoredError(Exception):
    exit_code: int = 3


# -------------------------------------------------------------------
# Input errors (exit 2)
# -------------------------------------------------------------------

class ManifestError(GeoredError):
    exit_code = 2


class ParseError(GeoredError):
    """Malformed numeric input (CSV bases, flag values)."""
    exit_code = 2


class UnsupportedSpec(GeoredError):
    exit_code = 2


# -------------------------------------------------------------------
# Expression errors (exit 3)
# -------------------------------------------------------------------

class ExprSyntaxError(GeoredError, SyntaxError):
    def __init__(self, message: str, position: int, source: Optional[str] = None):
        self.position = position
        self.source_text = source
        super().__init__(f"{message} at offset {position}")


class UnknownSymbol(GeoredError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown symbol `{name}`")


class DomainError(GeoredError, ArithmeticError):
    pass


# -------------------------------------------------------------------
# Geometry errors (exit 3)
# -------------------------------------------------------------------

class GeometryError(GeoredError):
    """Raised by constructions on fields; the analyzer records it as a failed check."""


class SingularFrame(GeometryError):
    pass


class SingularMatrix(GeometryError):
    pass


class SingularMetric(GeometryError):
    pass


class ChartMismatch(GeometryError):
    pass


class NotProportional(GeometryError):
    pass


class NonPositiveFactor(GeometryError):
    pass


class MissingContext(GeometryError):
    pass


class NotTimelike(GeometryError):
    pass


class NotUnit(GeometryError):
    pass


class NotOrthonormal(GeometryError):
    pass


class SingularProjection(GeometryError):
    pass


# -------------------------------------------------------------------
# Check outcome (exit 1)
# -------------------------------------------------------------------

class CheckFailed(GeoredError):
    exit_code = 1
