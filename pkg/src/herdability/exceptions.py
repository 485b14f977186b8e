"""Exception types raised by the herdability routines."""


class HerdabilityError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HerdabilityError, ValueError):
    """Malformed system description.

    ``field`` names the offending entry of the input document when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DimensionMismatch(HerdabilityError, ValueError):
    pass


class NotStable(HerdabilityError):
    """Infinite-horizon grammian requested for a non-Hurwitz state matrix."""


class NonConvergence(HerdabilityError):
    """Adaptive quadrature did not settle within its depth limit."""


class NotSingleInput(HerdabilityError):
    pass


class NotOutBranching(HerdabilityError):
    """Graph is not an input-rooted out-branching.

    ``node`` is the 1-based state index that broke the tree structure.
    """

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class TooManySelections(HerdabilityError):
    """Tie enumeration would exceed the selection cap.

    The maximal herdable set size is still available as ``size``.
    """

    def __init__(self, message, count, size):
        super().__init__(message)
        self.count = count
        self.size = size
