"""Exception types shared across the package."""


class F2GapError(Exception):
    """Base class for errors raised by this package."""


class ParseError(F2GapError):
    """Malformed input text. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ShapeError(F2GapError):
    """Input dimensions do not match the declared shape."""


class BudgetError(F2GapError):
    """Estimated work exceeds the configured resource budget."""


class InconclusiveError(F2GapError):
    """Analysis cannot certify a result within its enumeration limit."""


class EngineError(F2GapError):
    """Input lies outside the engine's domain (wrong degree, unlowered gates)."""
