"""Exception hierarchy shared by every ptep module."""


class PTEPError(Exception):
    """Base class for all errors raised by ptep."""


class InvalidDimensionError(PTEPError, ValueError):
    pass


class UnsupportedPartitionError(PTEPError, ValueError):
    pass


class BlocksNotDecoupledError(PTEPError, ValueError):
    pass


class UnsupportedExactError(PTEPError, TypeError):
    pass


class NotEvenError(PTEPError, ValueError):
    pass


class NotEpTimeError(PTEPError, ValueError):
    pass


class ExactCapExceededError(PTEPError, ValueError):
    pass


class ConvergenceError(PTEPError, ArithmeticError):
    """Root finder hit its iteration cap.

    ``partial`` holds the last iterate so callers can still inspect it.
    """

    def __init__(self, message, partial=None, iterations=None):
        super().__init__(message)
        self.partial = partial
        self.iterations = iterations


class NotDefectiveEnoughError(PTEPError, ArithmeticError):
    """The Jordan chain does not close: the block is not a single full Jordan block."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConditioningError(PTEPError, ArithmeticError):
    pass
