"""Exception hierarchy shared by every module of the engine."""


class SunitFermatError(Exception):
    """Base class for all engine errors."""


class InvalidArgument(SunitFermatError, ValueError):
    """An input violates a documented precondition."""


class DomainError(SunitFermatError, ArithmeticError):
    """The operation is undefined at this input (valuation of zero, inverse of zero, ...)."""


class ResourceError(SunitFermatError, RuntimeError):
    """An internal iteration or factoring cap was exceeded."""


class UnsupportedConfiguration(SunitFermatError, NotImplementedError):
    """The input is mathematically valid but outside what the engine handles."""
