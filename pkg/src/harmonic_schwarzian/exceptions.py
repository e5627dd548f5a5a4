"""Exception and warning classes raised by the toolkit."""


class HarmonicError(Exception):
    """Base class for all domain errors raised by this package."""


class DivisionByZero(HarmonicError, ZeroDivisionError):
    pass


class BasePointMismatch(HarmonicError, ValueError):
    pass


class BranchViolation(HarmonicError, ValueError):
    """A principal power or logarithm was requested off the right half-plane."""


class InvalidParameter(HarmonicError, ValueError):
    pass


class OutOfDomain(HarmonicError, ValueError):
    pass


class NotLocallyUnivalent(HarmonicError, ArithmeticError):
    pass


class NotSensePreserving(HarmonicError, ArithmeticError):
    pass


class ConsistencyError(HarmonicError, ValueError):
    pass


class RegimeWarning(UserWarning):
    """Parameters fall outside the regime where the monotonicity claim is proven."""
