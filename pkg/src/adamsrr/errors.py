"""Exception hierarchy shared by every module of the package."""


class AdamsRRError(Exception):
    """Base class for all errors raised by this package."""


class NonUnit(AdamsRRError, ArithmeticError):
    """An inverse was requested for an element that is not a unit."""


class NonUnitFactor(NonUnit):
    """A negative power of a non-invertible multiplicative factor was needed."""


class OrderMismatch(AdamsRRError, ValueError):
    """Coefficients with different nilpotency orders were combined."""


class CompositionConstantTerm(AdamsRRError, ValueError):
    """The inner series of a composition has a nonzero constant term."""


class TruncationError(AdamsRRError, ValueError):
    """A truncated series is too short for the ring it is evaluated in."""


class BadParam(AdamsRRError, ValueError):
    """A parameter violates the documented preconditions."""


class BadOrder(BadParam):
    """A truncation order is out of range."""


class NoSolution(AdamsRRError, ArithmeticError):
    """A triangular solve did not terminate with a zero residual."""


class SolveFailure(NoSolution):
    """Associated-series extraction failed."""


class InvalidGroupLaw(AdamsRRError, ValueError):
    """A custom bivariate series failed the formal group law axioms."""


class WrongTheory(AdamsRRError, TypeError):
    """An operation was applied to a ring following the wrong group law."""


class RingMismatch(AdamsRRError, TypeError):
    """An element does not live in the ring an operation expects."""


class NotImmersion(AdamsRRError, TypeError):
    """A normal bundle was requested for a morphism that is not an immersion."""


class NewtonMismatch(AdamsRRError, AssertionError):
    """Power sums computed directly and via Newton's identities disagree."""


class ConsistencyError(AdamsRRError, AssertionError):
    """Two independent routes to the same quantity disagree."""
