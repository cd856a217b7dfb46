"""Exception hierarchy shared by every module of the package."""


class PreserverLabError(Exception):
    """Base class for all errors raised by preserver_lab."""


class ZeroPolynomial(PreserverLabError, ValueError):
    pass


class ConstantPolynomial(PreserverLabError, ValueError):
    pass


class NoConvergence(PreserverLabError, ArithmeticError):
    pass


class DegreeExceeded(PreserverLabError, ValueError):
    pass


class DimensionMismatch(PreserverLabError, ValueError):
    pass


class DegenerateMap(PreserverLabError, ValueError):
    """Raised for a Mobius map with ad - bc = 0."""


class NonNormalizedHalfPlane(PreserverLabError, ValueError):
    """A half-plane domain given by a map with c != 0.

    ``hint`` carries the equivalent (a, b, c=0, d=1) coefficients.
    """

    def __init__(self, message, hint=None):
        super().__init__(message)
        self.hint = hint


class NotHyperbolic(PreserverLabError, ValueError):
    pass


class NotStable(PreserverLabError, ValueError):
    pass


class NotRealPolynomial(PreserverLabError, ValueError):
    pass


class NotRealOperator(PreserverLabError, ValueError):
    pass


class UnboundedDomainRequired(PreserverLabError, ValueError):
    pass


class BudgetExhausted(PreserverLabError, RuntimeError):
    pass


class ParseError(PreserverLabError, ValueError):
    pass


class ValidationError(PreserverLabError, ValueError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
