"""Exception types shared across the toolkit."""


class ColinkError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ColinkError):
    """An argument is outside the mathematical domain of an operation."""


class UnsupportedRingError(ColinkError):
    """Operation requires a univariate (PID) scalar ring."""


class NotAComplexError(ColinkError):
    """Consecutive differentials do not compose to zero."""


class GradingError(ColinkError):
    """A differential is not homogeneous although grading was requested."""


class TangleError(ColinkError):
    """Invalid tangle word: bad position, label or colour data."""

    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"generator {index}: {message}")
        self.index = index


class MoveError(ColinkError):
    """A rewriting move does not apply at the requested location."""


class NotClosedError(ColinkError):
    """Operation requires a closed diagram (empty domain and codomain)."""


class DegenerateDirectionError(ColinkError):
    """Family line direction has repeated entries."""


class BudgetExceededError(ColinkError):
    """Enumeration size exceeds the configured budget."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class UnknownSymbolError(ColinkError):
    """Ledger expression contains a symbol outside the fixed chain."""


class ConsistencyError(ColinkError):
    """Internal invariant violated; indicates a convention bug, not bad input."""
