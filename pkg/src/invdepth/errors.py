"""Exception hierarchy shared by every module."""


class InvDepthError(Exception):
    """Base class for all errors raised by invdepth."""


class StructuralError(InvDepthError, ValueError):
    """Operands have mismatched shapes, variable counts or characteristics."""


class UnsupportedCharacteristicError(InvDepthError, ValueError):
    pass


class PreconditionError(InvDepthError, ValueError):
    pass


class CapacityError(InvDepthError, RuntimeError):
    """A configured size cap would be exceeded."""


class GroupTooLargeError(CapacityError):
    pass


class TooManySubspacesError(CapacityError):
    pass


class InconsistencyError(InvDepthError, RuntimeError):
    """Two independent methods disagree; this signals a bug or a cutoff that is too small."""


class ScenarioError(InvDepthError, ValueError):
    """Scenario file could not be parsed or failed validation."""
