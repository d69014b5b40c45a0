"""Exception types shared across the package."""


class FinqError(Exception):
    """Base class for all package errors."""


class ValidationError(FinqError, ValueError):
    """An input violates a documented precondition."""


class ShapeError(ValidationError):
    """Operands have incompatible shapes."""


class ResourceError(FinqError):
    """A requested matrix exceeds the configured size cap."""


class NumericalError(FinqError, ArithmeticError):
    """A computed quantity fails a numerical tolerance check."""
