"""Optional process-level fan-out for independent per-pattern work.

``GRADEDLC_THREADS`` selects the number of workers (0 = one per CPU).
Unset or 1 means sequential.  Results always come back in input order,
so output never depends on the degree of parallelism.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

_MIN_ITEMS = 16


def worker_count() -> int:
    raw = os.environ.get("GRADEDLC_THREADS", "").strip()
    if not raw:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise ValueError(f"GRADEDLC_THREADS must be an integer, got {raw!r}") from None
    if k < 0:
        raise ValueError("GRADEDLC_THREADS must be >= 0")
    return k or (os.cpu_count() or 1)


def pmap(func, items) -> list:
    items = list(items)
    k = worker_count()
    if k <= 1 or len(items) < _MIN_ITEMS:
        return [func(x) for x in items]
    chunk = max(1, len(items) // (4 * k))
    with ProcessPoolExecutor(max_workers=k) as ex:
        return list(ex.map(func, items, chunksize=chunk))
