"""Node-expansion budgets shared by every search in the package.

Searches call ``budget.tick()`` once per expanded node.  When the limit is
hit they raise :class:`BudgetExhausted`, which callers translate into an
"unknown" answer.  A budget of ``None`` means unlimited.
"""

from __future__ import annotations


class BudgetExhausted(Exception):
    """Raised when a search runs out of node expansions."""

    def __init__(self, used: int, limit: int | None):
        super().__init__(f"budget exhausted after {used} expansions (limit {limit})")
        self.used = used
        self.limit = limit


class ExtractionFailed(Exception):
    """A constructive procedure dead-ended.  ``trace`` says where and why."""

    def __init__(self, message: str, trace: list[dict] | None = None):
        super().__init__(message)
        self.trace = list(trace or [])

    def as_dict(self) -> dict:
        return {"message": str(self), "trace": self.trace}


class Budget:
    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(self.used, self.limit)

    @property
    def remaining(self) -> int | None:
        if self.limit is None:
            return None
        return max(0, self.limit - self.used)

    def counters(self) -> dict:
        return {"used": self.used, "limit": self.limit}

    @classmethod
    def coerce(cls, budget: "Budget | int | None") -> "Budget":
        if isinstance(budget, Budget):
            return budget
        return cls(budget)

    def __repr__(self):
        return f"Budget(used={self.used}, limit={self.limit})"
