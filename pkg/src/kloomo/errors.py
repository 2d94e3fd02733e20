"""Exception types raised across the package."""


class KloomoError(Exception):
    """Base class for every error raised by kloomo."""


class RangeError(KloomoError, ValueError):
    pass


class ReducibleError(KloomoError, ValueError):
    pass


class ZeroParameter(KloomoError, ValueError):
    pass


class BudgetExceeded(KloomoError, RuntimeError):
    pass


class NotIrreducible(KloomoError, ValueError):
    pass


class NotIsometry(KloomoError, ValueError):
    pass


class DimensionMismatch(KloomoError, ValueError):
    pass


class NonIntegralResult(KloomoError, ArithmeticError):
    """An exact division left a remainder; always an internal inconsistency."""


class InvariantViolation(KloomoError, AssertionError):
    """A structural property that must hold did not (e.g. the Kloosterman range)."""
