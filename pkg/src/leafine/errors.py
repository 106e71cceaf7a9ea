"""Exception types raised across the package.

Every error carries a stable class name; the CLI prints it as the
``error:<Name>:`` diagnostic prefix.
"""


class LeafineError(Exception):
    """Base class for all package errors."""


class TreeSyntaxError(LeafineError, ValueError):
    """Input text does not follow the tree dialect."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class UnaryVertexError(LeafineError, ValueError):
    """A vertex with exactly one child; topological trees forbid it."""


class EmptySelection(LeafineError, ValueError):
    pass


class IndexOutOfRange(LeafineError, IndexError):
    pass


class SingleLeafTree(LeafineError, ValueError):
    pass


class InsufficientSequence(LeafineError, ValueError):
    pass


class NonPositiveLogArgument(LeafineError, ArithmeticError):
    pass


class PrecisionInsufficient(LeafineError, ArithmeticError):
    pass


class TailEstimateError(LeafineError, ArithmeticError):
    """The error terms were not decreasing where a tail bound relies on it."""


class ResourceCapError(LeafineError):
    """A configured size/time budget would be exceeded."""


class BudgetExceeded(ResourceCapError):
    pass


class DistinctSetOverflow(ResourceCapError):
    pass


class DigitsCapExceeded(ResourceCapError):
    pass
