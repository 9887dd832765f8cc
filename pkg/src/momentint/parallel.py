"""Order-preserving parallel map used by the sweeps."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

__all__ = ["thread_count", "ordered_map"]

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "MOMENTS_THREADS"


def thread_count(requested: Optional[int] = None) -> int:
    """Worker count: explicit request, else $MOMENTS_THREADS, else 1."""
    if requested is None:
        raw = os.environ.get(THREADS_ENV, "").strip()
        try:
            requested = int(raw) if raw else 1
        except ValueError:
            requested = 1
    return max(1, requested)


def ordered_map(fn: Callable[[T], R], items: Iterable[T],
                threads: Optional[int] = None) -> list[R]:
    """``[fn(x) for x in items]``, possibly on a thread pool.

    Results come back in input order, so output never depends on scheduling.
    """
    items = list(items)
    n = min(thread_count(threads), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
