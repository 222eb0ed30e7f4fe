"""Exception hierarchy shared by all modules."""


class CondmonError(Exception):
    """Base class for every error raised by this package."""


class GroupMismatch(CondmonError):
    pass


class InsufficientRank(CondmonError):
    pass


class DimensionMismatch(CondmonError):
    pass


class NotAMember(CondmonError):
    pass


class WindowTooLarge(CondmonError):
    pass


class BadParameters(CondmonError):
    pass


class GroupTooSmall(CondmonError):
    pass


class UnknownPrime(CondmonError):
    pass


class SpecError(CondmonError):
    """A spec file or literal failed validation."""


class BudgetExceeded(CondmonError):
    """A configured enumeration cap was hit.

    ``progress`` carries whatever partial counts were known when the
    computation stopped, so callers can report them instead of guessing.
    """

    def __init__(self, message, **progress):
        super().__init__(message)
        self.progress = progress


class BoundAttained(CondmonError):
    """An enumeration found an object at its assumed length bound."""


class VerificationFailed(CondmonError):
    """A construction did not have the property it was built for."""
