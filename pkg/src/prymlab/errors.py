"""Exception hierarchy shared by all prymlab modules."""


class PrymLabError(Exception):
    """Base class; the CLI turns any subclass into a JSON error object."""


class GenusMismatchError(PrymLabError, ValueError):
    pass


class EnumerationBoundError(PrymLabError, ValueError):
    pass


class InvalidPeriodMatrixError(PrymLabError, ValueError):
    pass


class AGMConvergenceError(PrymLabError, ArithmeticError):
    pass


class CurveError(PrymLabError, ValueError):
    """Malformed curve data, points off the curve, malformed divisors."""


class PreconditionError(PrymLabError, ValueError):
    """Sampled branch data does not meet the rationality conditions; resample."""


class ReconstructionError(PrymLabError, RuntimeError):
    """The quadruple orbit contradicts the uniqueness or stability properties."""
