"""Exception types and the visited-node budget shared by the search routines."""

from __future__ import annotations


class DiagnosisToolError(Exception):
    """Base class for all errors raised by this package."""


class BoundError(DiagnosisToolError, ValueError):
    """A parameter is outside its supported range."""


class DomainError(DiagnosisToolError, ValueError):
    """An input refers to vertices, edges, or test domains that do not fit the graph."""


class ResourceError(DiagnosisToolError, RuntimeError):
    """A combinatorial search exceeded its visited-node budget.

    Carries a ``log`` dict describing how far the search got before it was
    stopped, so callers can report partial progress instead of failing silently.
    """

    def __init__(self, message: str, log: dict | None = None):
        super().__init__(message)
        self.log = dict(log or {})


class BudgetTracker:
    """Counts visited search nodes against a hard limit.

    Budgets are visited-node counts, never wall-clock limits. Hot loops call
    ``spend`` with batch totals rather than per node.
    """

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int | None = None):
        if limit is not None and limit <= 0:
            raise BoundError(f"budget limit must be positive, got {limit}")
        self.limit = limit
        self.spent = 0

    def spend(self, amount: int, where: str = "") -> None:
        self.spent += amount
        if self.limit is not None and self.spent > self.limit:
            raise ResourceError(
                f"visited-node budget exhausted ({self.spent} > {self.limit})"
                + (f" during {where}" if where else ""),
                log={"spent": self.spent, "limit": self.limit, "where": where},
            )

    def fits(self, amount: int) -> bool:
        """Whether `amount` more nodes could be visited without busting the limit."""
        return self.limit is None or self.spent + amount <= self.limit
