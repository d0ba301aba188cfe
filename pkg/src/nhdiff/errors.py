"""Exception types raised across the toolkit."""


class NHDiffError(Exception):
    """Base class for all toolkit errors."""


class NotPrime(NHDiffError, ValueError):
    pass


class ReducibleModulus(NHDiffError, ValueError):
    pass


class DegreeMismatch(NHDiffError, ValueError):
    pass


class DivisionByZero(NHDiffError, ZeroDivisionError):
    pass


class ZeroDenominator(NHDiffError, ZeroDivisionError):
    pass


class UnsupportedFieldShape(NHDiffError, ValueError):
    """The field does not have the residue class an operation needs."""


class UnsupportedCharacteristic(NHDiffError, ValueError):
    pass


class NotQuadratic(NHDiffError, ValueError):
    pass


class RepeatedRoots(NHDiffError, ValueError):
    pass


class PerfectSquareInput(NHDiffError, ValueError):
    """Weil bound requested for a constant times a square."""


class NotInU1(NHDiffError, ValueError):
    pass


class WrongUClass(NHDiffError, ValueError):
    pass


class ZeroDirection(NHDiffError, ValueError):
    pass


class Unsupported(NHDiffError):
    """No closed form is available for the requested coefficient."""


class BudgetExceeded(NHDiffError):
    pass


class IdentityViolation(NHDiffError, AssertionError):
    """A computed spectrum broke the pair-count identities."""


class BranchAsymmetry(NHDiffError, AssertionError):
    """A condition claimed independent of the square-root branch was not."""


class InternalConsistencyError(NHDiffError, AssertionError):
    pass
