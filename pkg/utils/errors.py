"""
Exception hierarchy shared by every package
"""
from typing import Optional


class ToolkitError(Exception):
    """Base class for all errors raised by the toolkit"""
    pass


class DomainError(ToolkitError, ValueError):
    """Raised when an operand lies outside the domain of an operation."""
    pass


class InfeasibleSchemeError(DomainError):
    """Raised when no integer l satisfies the weight-scheme window for delta."""

    def __init__(self, delta: float, nearest_feasible_delta: Optional[float] = None):
        self.delta = delta
        self.nearest_feasible_delta = nearest_feasible_delta
        message = f"No integer l satisfies delta/20 <= 2^(-l/2) <= delta/10 for delta={delta}"
        if nearest_feasible_delta is not None:
            message += f" (nearest feasible delta: {nearest_feasible_delta:.6g})"
        super().__init__(message)


class ResourceLimitError(ToolkitError):
    """Raised when a request would materialize more terms than the configured cap."""

    def __init__(self, what: str, term_count: int, cap: int):
        self.what = what
        self.term_count = term_count
        self.cap = cap
        super().__init__(f"{what} needs {term_count} terms, cap is {cap}")


class SolverError(ToolkitError):
    """Raised when an LP needed downstream ends without an optimum."""
    pass
