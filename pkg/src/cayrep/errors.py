"""Exception types shared across the package."""


class CayrepError(Exception):
    """Base class for all package errors."""


class DegreeMismatch(CayrepError, ValueError):
    pass


class CapExceeded(CayrepError):
    """An enumeration or closure went over its configured budget.

    Callers treat this as a signal to switch to a structural route, not as a
    bug.
    """

    def __init__(self, what, cap, seen=None):
        self.what = what
        self.cap = cap
        self.seen = seen
        msg = f"{what}: cap {cap} exceeded"
        if seen is not None:
            msg += f" (reached {seen})"
        super().__init__(msg)


class ElementCapExceeded(CapExceeded):
    pass


class BudgetExceeded(CayrepError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class OrbitMismatch(CayrepError):
    pass


class NotIsomorphism(CayrepError):
    pass


class NotRegular(CayrepError):
    pass


class NotAlmostSimple(CayrepError):
    pass


class NoSuchInvolution(CayrepError):
    pass


class IdentityInConnection(CayrepError, ValueError):
    pass


class NotCentral(CayrepError, ValueError):
    pass


class UnsupportedGroup(CayrepError, ValueError):
    pass


class InvalidSpec(CayrepError, ValueError):
    pass


class NotEvenInvolution(CayrepError, ValueError):
    pass


class NotOdd(CayrepError, ValueError):
    pass
