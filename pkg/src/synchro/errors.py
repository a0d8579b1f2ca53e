"""Exception hierarchy used across the package."""


class SynchroError(Exception):
    """Base class for all errors raised by this package."""


class DegreeMismatch(SynchroError):
    pass


class IsPermutation(SynchroError):
    pass


class NotTransitive(SynchroError):
    pass


class NotPrimitive(SynchroError):
    pass


class NotRegular(SynchroError):
    pass


class EmptyGraph(SynchroError):
    pass


class NullGraph(SynchroError):
    pass


class BadParameter(SynchroError):
    pass


class BadPrime(SynchroError):
    pass


class TooLarge(SynchroError):
    pass


class ZeroInConnectionSet(SynchroError):
    pass


class OrderMismatch(SynchroError):
    pass


class SizeMismatch(SynchroError):
    pass


class OrbitBudgetExceeded(SynchroError):
    pass


class ColouringInvalid(SynchroError):
    pass


class HomomorphismInvalid(SynchroError):
    pass


class TrivialSrg(SynchroError):
    pass


class TimeBudgetExceeded(SynchroError):
    """Search ran out of budget.

    ``partial`` holds whatever was computed before the abort and
    ``proven`` is False: absence of a solution was *not* established.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
        self.proven = False
