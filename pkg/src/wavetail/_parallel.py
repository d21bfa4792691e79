"""Thread pool helper honouring the WAVETAIL_THREADS cap."""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "WAVETAIL_THREADS"


def thread_count():
    """Worker count: ``WAVETAIL_THREADS`` if set (minimum 1), else the CPU count."""
    raw = os.environ.get(ENV_VAR, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def parallel_map(func, items):
    """``[func(x) for x in items]`` evaluated on a thread pool, results in input order."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
