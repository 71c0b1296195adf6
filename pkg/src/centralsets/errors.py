"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the classes coarse.
"""


class CentralSetsError(Exception):
    """Base class for all library errors."""


class ParseError(CentralSetsError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(CentralSetsError):
    """A table that is not a semigroup (or a map that is not a homomorphism)."""

    def __init__(self, message, counterexample=None):
        self.counterexample = counterexample
        super().__init__(message)


class UniverseMismatch(CentralSetsError):
    pass


class PreconditionError(CentralSetsError):
    pass


class UnsupportedStructureError(PreconditionError):
    pass


class EmptyClosureError(PreconditionError):
    pass


class InjectivityError(PreconditionError):
    pass


class BoundsError(CentralSetsError):
    pass


class ResourceCapError(CentralSetsError):
    def __init__(self, message, trace=None):
        self.trace = trace
        super().__init__(message)


class SearchCancelled(ResourceCapError):
    pass


class WitnessError(CentralSetsError):
    """A witness search could not be completed; carries what defeated it."""

    def __init__(self, message, trace=None):
        self.trace = trace
        super().__init__(message)


class InvariantViolation(CentralSetsError):
    """Raised when an internal cross-check disagrees. Always a bug."""
