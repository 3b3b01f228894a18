"""
Exception Hierarchy for tropdeg

All errors raised deliberately by the library derive from ``TropdegError`` so
callers (and the CLI dispatcher) can separate domain failures from bugs in
third-party code. Errors that describe bad input additionally derive from
``ValueError``.

Components:
- TropdegError: common base class
- DimensionMismatchError / PreconditionError / ModelParseError: bad input
- EmptyPolyhedronError / NoFiniteMatchingError: degenerate data
- BudgetExceededError and subclasses: configured limits hit
- ConstructionError / InvariantViolation: a constructive step or asserted
  property failed, which indicates an implementation bug

Usage:
    from tropdeg.errors import BudgetExceededError

    try:
        rank = tropical_rank(matrix)
    except BudgetExceededError as exc:
        logger.warning("Rank not computed: %s", exc)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional


class TropdegError(RuntimeError):
    """Base class for every error raised by tropdeg."""


class DimensionMismatchError(TropdegError, ValueError):
    """Raised when points, polynomials or constraints disagree on dimension."""


class PreconditionError(TropdegError, ValueError):
    """Raised when an operation is called outside its documented domain."""


class EmptyPolyhedronError(TropdegError):
    """Raised when a polyhedron's constraints have no common solution."""


class NoFiniteMatchingError(TropdegError):
    """Raised when every perfect matching of a matrix uses an infinite entry."""


class BudgetExceededError(TropdegError):
    """Raised when a computation would exceed a configured budget."""


class RankBudgetExceededError(BudgetExceededError):
    """Raised when a matrix is too large for brute-force tropical rank."""


class GridBudgetExceededError(BudgetExceededError):
    """Raised when a monomial grid is too large to enumerate."""


class RefinementBudgetExceededError(BudgetExceededError):
    """
    Raised when certificate refinement runs out of epsilon halvings.

    Attributes:
        last_epsilon: the final epsilon that was tried
    """

    def __init__(self, message: str, last_epsilon: Optional[Fraction] = None):
        super().__init__(message)
        self.last_epsilon = last_epsilon


class ConstructionError(TropdegError):
    """Raised when a construction that must succeed fails."""


class InvariantViolation(TropdegError):
    """Raised when a property asserted on every call does not hold."""


class ModelParseError(TropdegError, ValueError):
    """
    Raised for malformed model or certificate files.

    Attributes:
        field: dotted path of the offending field, when known
        line: 1-based line number in the source text, when known
    """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        location = []
        if field:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")
        self.field = field
        self.line = line
