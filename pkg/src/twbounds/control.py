"""Cancellation signals and the shared monotone bound pair."""

from __future__ import annotations

import threading
import time
from collections.abc import Callable


class Cancelled(Exception):
    """Raised when a cancellation signal fires inside a long computation."""


class SizeCapExceeded(Exception):
    """Raised when the exact decider is asked about a graph above its cap."""


class Exhausted(Exception):
    """Raised by lift when tw(G/F) = tw(G), so no larger minor exists."""


class NoFill(Exception):
    """Raised when a fill is requested of a complete graph."""


class CancelToken:
    """Composite cancellation source: explicit flag, deadline, or predicate.

    Workers poll `check()` at loop granularity; it raises Cancelled once any
    source fires.  Tokens chain: a child is cancelled whenever its parent is.
    """

    __slots__ = ("_flag", "deadline", "predicate", "parent")

    def __init__(
        self,
        deadline: float | None = None,
        predicate: Callable[[], bool] | None = None,
        parent: "CancelToken | None" = None,
    ):
        self._flag = False
        self.deadline = deadline
        self.predicate = predicate
        self.parent = parent

    @classmethod
    def with_timeout(cls, seconds: float, parent: "CancelToken | None" = None) -> "CancelToken":
        return cls(deadline=time.monotonic() + seconds, parent=parent)

    def cancel(self) -> None:
        self._flag = True

    def is_set(self) -> bool:
        if self._flag:
            return True
        if self.deadline is not None and time.monotonic() > self.deadline:
            return True
        if self.predicate is not None and self.predicate():
            return True
        if self.parent is not None and self.parent.is_set():
            return True
        return False

    def check(self) -> None:
        if self.is_set():
            raise Cancelled()


def check(cancel: CancelToken | None) -> None:
    if cancel is not None:
        cancel.check()


class SharedBounds:
    """Monotone lower/upper treewidth bounds shared by the two workers.

    The lower bound may only rise and the upper bound may only fall; an
    update that would regress is ignored, one that would cross the other
    bound is rejected loudly since both are supposed to be true bounds.
    """

    def __init__(self, lower: int = 0, upper: int | None = None):
        self._lock = threading.Lock()
        self.lower = lower
        self.upper = upper
        self.lower_generation = 0
        self.upper_generation = 0

    def update_lower(self, value: int) -> bool:
        """Raise the lower bound; returns True if it moved."""
        with self._lock:
            if value <= self.lower:
                return False
            if self.upper is not None and value > self.upper:
                raise ValueError(f"lower bound {value} would exceed upper bound {self.upper}")
            self.lower = value
            self.lower_generation += 1
            return True

    def update_upper(self, value: int) -> bool:
        """Drop the upper bound; returns True if it moved."""
        with self._lock:
            if self.upper is not None and value >= self.upper:
                return False
            if value < self.lower:
                raise ValueError(f"upper bound {value} would undercut lower bound {self.lower}")
            self.upper = value
            self.upper_generation += 1
            return True

    def gap_closed(self) -> bool:
        with self._lock:
            return self.upper is not None and self.lower == self.upper

    def snapshot(self) -> tuple[int, int | None]:
        with self._lock:
            return self.lower, self.upper
