"""Exception hierarchy shared by every module."""


class FockchernError(Exception):
    """Base class for all library errors."""


class StructuralError(FockchernError, ValueError):
    """Operands live in incompatible rings, or a variable is unknown."""


class WindowError(FockchernError, ValueError):
    """A truncation window is too small for the requested result."""


class DomainError(FockchernError, ValueError):
    """An argument lies outside an operation's domain."""


class DivisionError(FockchernError, ZeroDivisionError):
    """Inversion of a zero (or non-invertible) series."""
