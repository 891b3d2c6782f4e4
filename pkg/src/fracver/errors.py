"""Exception hierarchy shared by every module."""


class FracError(Exception):
    """Base class for library errors."""


class DomainError(FracError, ValueError):
    """Argument outside the domain an operation is defined on."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. Gamma at a non-positive integer)."""


class SingularityError(DomainError):
    """Kernel evaluated at a point where it is unbounded."""


class GridTooSmallError(DomainError):
    pass


class ConvergenceError(FracError, ArithmeticError):
    """An iterative or series computation failed to reach its tolerance."""


class MissingDerivativeError(FracError, ValueError):
    pass


class ConstraintViolationError(FracError, ValueError):
    """Problem data violate a hard constraint (e.g. g(0, y0) != 0)."""


class DegeneracyError(FracError, ArithmeticError):
    pass


class NotApplicableError(FracError, ValueError):
    pass


class UnsupportedKernelError(FracError, ValueError):
    pass


class UnknownClaimError(FracError, KeyError):
    pass
