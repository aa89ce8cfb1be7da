"""Cooperative per-query time limits."""
from __future__ import annotations

import time


class QueryTimeout(Exception):
    """Raised when a query runs past its time limit."""


class Deadline:
    def __init__(self, seconds: float | None = None):
        self.limit = seconds
        self.start = time.perf_counter()
        self.expires = None if seconds is None else self.start + seconds

    def check(self) -> None:
        if self.expires is not None and time.perf_counter() > self.expires:
            raise QueryTimeout(f"time limit of {self.limit:g}s exceeded")

    def elapsed(self) -> float:
        return time.perf_counter() - self.start
