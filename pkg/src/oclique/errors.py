"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class OcliqueError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(OcliqueError, ValueError):
    """Malformed OGRAPH text, or a graph violating its type invariants."""


class LimitExceeded(OcliqueError):
    """An exact routine was asked to work beyond its documented size limit."""


class BudgetExceeded(LimitExceeded):
    """A search ran out of its time/node budget or hit its declared cap.

    ``progress`` carries whatever counters the search had accumulated, and
    ``lower_bound`` is set when the search can still report a bound
    (for example the oriented chromatic number is known to exceed the cap).
    """

    def __init__(self, message: str, *, progress: dict | None = None,
                 lower_bound: int | None = None) -> None:
        super().__init__(message)
        self.progress = dict(progress or {})
        self.lower_bound = lower_bound
