"""Thread-pool map with deterministic output order.

FGW_THREADS (or an explicit override) sets the worker count.  Results
always come back in input order, so every reduction downstream is
independent of the thread count; with one worker the pool is skipped
entirely.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count(override=None) -> int:
    if override is not None:
        return max(1, int(override))
    env = os.environ.get("FGW_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def parallel_map(fn, items, threads=None) -> list:
    """Map preserving input order; pool size from threads or FGW_THREADS."""
    items = list(items)
    t = thread_count(threads)
    if t <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=t) as pool:
        return list(pool.map(fn, items))
