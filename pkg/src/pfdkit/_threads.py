"""Worker-count control.

PFDKIT_THREADS caps the thread pool used for independent per-flat and
per-component work.  Results are merged in input order, so output never
depends on the schedule.  Under CPython's GIL this is a cap on concurrency,
not a parallel speedup for the exact arithmetic.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("PFDKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn, items):
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
