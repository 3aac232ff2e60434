"""Exception hierarchy.  The CLI maps these onto exit codes."""


class OpineqError(Exception):
    """Base class for every error raised by this package."""


class UsageError(OpineqError, ValueError):
    """Bad arguments: out-of-range parameters, unknown ids, malformed input."""


class DimensionMismatch(UsageError):
    pass


class NotSquareError(UsageError):
    pass


class NotHermitianError(UsageError):
    pass


class UnknownCheckError(UsageError):
    pass


class DomainError(OpineqError, ValueError):
    """A scalar function was asked for a value outside its domain."""


class FgMismatchError(DomainError):
    """``f(t) g(t) = t`` does not hold on the relevant spectrum."""


class PreconditionUnmet(OpineqError):
    """A lemma was applied to inputs that do not satisfy its hypothesis."""


class NumericalFailure(OpineqError, ArithmeticError):
    """An eigensolver or iterative refinement did not converge."""


class SingularError(NumericalFailure):
    """Matrix is singular or too ill-conditioned for the requested operation."""
