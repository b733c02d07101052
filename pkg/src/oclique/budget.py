"""Node counters and wall-clock budgets shared by the exponential searches."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded


@dataclass
class SearchStats:
    """Mutable counters threaded through a search.

    ``deadline`` is a ``time.monotonic()`` value; it is polled every 1024
    nodes so the check stays off the hot path.
    """

    nodes: int = 0
    deadline: float | None = None
    max_nodes: int | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def with_budget(cls, seconds: float | None = None, max_nodes: int | None = None) -> "SearchStats":
        deadline = None if seconds is None else time.monotonic() + seconds
        return cls(deadline=deadline, max_nodes=max_nodes)

    def tick(self, count: int = 1) -> None:
        before = self.nodes
        self.nodes += count
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exhausted", progress=self.snapshot())
        if self.deadline is not None and (before >> 10) != (self.nodes >> 10):
            self.check_time()

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted", progress=self.snapshot())

    def bump(self, key: str, count: int = 1) -> None:
        self.extra[key] = self.extra.get(key, 0) + count

    def snapshot(self) -> dict:
        return {"nodes_explored": self.nodes, **self.extra}
