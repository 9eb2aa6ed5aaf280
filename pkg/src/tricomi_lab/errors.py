"""Exception hierarchy shared by all modules."""


class TricomiError(Exception):
    """Base class for library errors."""


class DomainError(TricomiError, ValueError):
    """Argument outside the domain on which an operation is defined."""


class ArgumentError(TricomiError, ValueError):
    """Structurally invalid argument (grid too small, bad schedule, ...)."""


class SingularityError(TricomiError, ArithmeticError):
    """A kernel was evaluated exactly at one of its singular endpoints."""


class NumericError(TricomiError, ArithmeticError):
    """A numerical procedure failed to converge or produced non-finite output."""

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class NonContractionError(NumericError):
    """Fixed-point iteration diverged."""


class ResourceError(TricomiError, MemoryError):
    """Requested problem size exceeds the configured limits."""
