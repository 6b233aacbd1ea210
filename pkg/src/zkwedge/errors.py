"""Exception types shared across the package."""


class ZkError(Exception):
    """Base class for all library errors."""


class ComplexError(ZkError, ValueError):
    """Malformed simplicial complex input (bad vertex, duplicate vertex, bad face)."""


class SizeLimitError(ZkError):
    """A computation was refused because the input exceeds a documented size cap."""


class NotShiftedError(ZkError, ValueError):
    """The decomposer was handed a complex that is not shifted in the identity order."""


class WedgeError(ZkError, ValueError):
    """Illegal operation in the symbolic wedge calculus (overlapping supports etc.)."""


class NonRegularStepError(ZkError):
    """An adjunction step tried to remove summands that are not present.

    For shifted inputs this cannot happen, so it signals an internal bug.  The
    offending step and fibre are kept on the exception for diagnostics.
    """

    def __init__(self, message, step=None, fibre=None):
        super().__init__(message)
        self.step = step
        self.fibre = fibre
