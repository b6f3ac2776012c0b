"""Exception hierarchy shared by all gcdim modules."""


class GcdimError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByNonUnit(GcdimError, ZeroDivisionError):
    """Division by zero, or by a residue vector with a non-invertible entry.

    Over the residue backend this usually means the prime basis is too
    small for the denominators encountered; enlarge the basis.
    """


class TruncationMismatch(GcdimError, ValueError):
    """Arithmetic between series with different windows or rings."""


class NonUnitConstantTerm(GcdimError, ValueError):
    """Series inversion requires an invertible constant coefficient."""


class ConstantTermNotOne(GcdimError, ValueError):
    """Series square root requires constant coefficient exactly 1."""


class ExponentOutOfWindow(GcdimError, ValueError):
    """Monomial exponent beyond the truncation window."""


class PreconditionViolated(GcdimError, ValueError):
    """A series operation was called outside its domain of validity."""


class IntegralityError(GcdimError, ValueError):
    """A coefficient expected to be a (nonnegative) integer is not."""


class WindowTooSmall(GcdimError, ValueError):
    """The dimension table does not cover the requested loop orders."""


class NegativeConnectedDim(GcdimError, ValueError):
    """The connected-dimension inversion produced a negative entry.

    Signals an inconsistent input table or a wrong component-parity
    rule; the computation must abort rather than clamp.
    """


class TooManyVertices(GcdimError, ValueError):
    """Graph beyond the size supported by the exhaustive algorithms."""


class TooLarge(GcdimError, ValueError):
    """Enumeration request beyond desk scale."""


class RankDisagreement(GcdimError, ArithmeticError):
    """Modular ranks disagreed across primes; enlarge the prime set."""


class VerificationFailed(GcdimError, AssertionError):
    """A cross-check between two computation paths did not hold."""
