"""Order-preserving map over independent trials.

NILCOMMUTE_THREADS caps the worker count; unset means serial.  Each trial derives its
own seed, so results never depend on scheduling.
"""

import os
from concurrent.futures import ProcessPoolExecutor


def workers() -> int:
    try:
        return max(1, int(os.environ.get("NILCOMMUTE_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    items = list(items)
    w = workers()
    if w == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * w))))


def trial_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index) & ((1 << 64) - 1)
