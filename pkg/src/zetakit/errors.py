"""Exception hierarchy shared by every module."""


class ZetaError(Exception):
    """Base class for all library errors."""


class PoleError(ZetaError, ValueError):
    """Evaluation requested at a pole of the function."""


class DomainError(ZetaError, ValueError):
    """Argument outside the supported domain."""


class ConvergenceError(ZetaError, ArithmeticError):
    """An internal series or continued fraction failed to reach tolerance."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature did not converge."""


class NotPrimitiveError(DomainError):
    """A primitive character was required."""


class RoundingError(ZetaError, ArithmeticError):
    """A value expected to be an integer was not close to one."""


class RealityError(ZetaError, ArithmeticError):
    """A quantity that must be real carried a significant imaginary part."""


class ArgTrackingError(ZetaError, ArithmeticError):
    """Continuous argument tracking lost continuity."""


class LimitError(ZetaError, ValueError):
    """Requested size exceeds a memory guard."""
