"""State budgets for the search-style operations.

Every potentially exponential search takes a ``budget`` argument counting
elementary states (search nodes, enumerated coefficient vectors, table
entries).  ``None`` means "use the default", which can be overridden with
the ``ADLAB_BUDGET`` environment variable.
"""

import os

from .errors import BudgetExceededError

DEFAULT_BUDGET = 1 << 26


def effective_budget(budget: int | None) -> int:
    """Resolve an explicit budget, the environment override, or the default."""
    if budget is not None:
        if budget <= 0:
            raise ValueError("budget must be positive")
        return budget
    env = os.environ.get("ADLAB_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise ValueError(f"ADLAB_BUDGET is not an integer: {env!r}") from exc
        if value > 0:
            return value
    return DEFAULT_BUDGET


def as_meter(budget) -> "WorkMeter":
    """Accept an int, None, or an existing meter (shared across sub-calls)."""
    if isinstance(budget, WorkMeter):
        return budget
    return WorkMeter(budget)


class WorkMeter:
    """Counts elementary states and raises once a budget is exhausted."""

    __slots__ = ("limit", "states")

    def __init__(self, budget: int | None):
        self.limit = effective_budget(budget)
        self.states = 0

    def tick(self, n: int = 1) -> None:
        self.states += n
        if self.states > self.limit:
            raise BudgetExceededError(
                f"state budget exhausted ({self.states} > {self.limit})",
                budget=self.limit,
                states=self.states,
            )

    def check_feasible(self, projected: int, what: str) -> None:
        """Fail fast when a projected enumeration cannot fit in the budget."""
        if projected > self.limit - self.states:
            raise BudgetExceededError(
                f"{what} needs about {projected} states, budget leaves "
                f"{self.limit - self.states}",
                budget=self.limit,
                states=self.states,
            )
