"""Exception hierarchy shared by every module in the package."""


class EllipsumError(Exception):
    """Base class for all package errors."""


class ZeroArgument(EllipsumError, ValueError):
    """A theta-type function was called at argument 0 (a pole of infinite order)."""


class NomeOutOfRange(EllipsumError, ValueError):
    """The nome (or product base) lies outside the admissible disc."""


class TruncationExhausted(EllipsumError, ArithmeticError):
    """An infinite product or lattice sum hit its cap before the tail bound was met."""


class PoleHit(EllipsumError, ZeroDivisionError):
    """A denominator theta value vanished.

    ``index`` and ``factor`` identify where, when known.
    """

    def __init__(self, message, index=None, factor=None):
        super().__init__(message)
        self.index = index
        self.factor = factor


class BalanceViolation(EllipsumError, ValueError):
    """Series parameters violate the elliptic balancing or termination condition."""


class DegreeOverflow(EllipsumError, ArithmeticError):
    """A Taylor expansion failed to reproduce its input: the function is not in W_c^n."""


class UnknownIdentity(EllipsumError, KeyError):
    """No identity is registered under the requested slug."""


class SamplerExhausted(EllipsumError, RuntimeError):
    """Pole-avoidance retries ran out while sampling a parameter point."""
