"""Partitioned execution of index-range workers.

The index range [0, total) is cut into ordered contiguous chunks. With one
job the chunks run in-process, one after another; with more, a
multiprocessing Pool evaluates them and `Pool.map` hands the results back in
chunk order. Callers merge the ordered results, so the outcome never depends
on the worker count.

A run that issues many partitioned calls (a suite, a CLI command) opens one
pool with `worker_pool(jobs)`; every call inside the block reuses it. Calls
outside such a block start a pool of their own.
"""

import logging
from contextlib import contextmanager
from multiprocessing import Pool
from typing import Any, Callable, Iterator, List, Optional, Tuple

logger = logging.getLogger(__name__)

CHUNKS_PER_JOB = 4
# Below this many points per worker the range runs in-process
MIN_POINTS_PER_JOB = 2048

_shared_pool = None
_shared_jobs = 0


def partition(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous ranges."""
    parts = max(1, min(parts, total)) if total else 1
    size, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


@contextmanager
def worker_pool(jobs: int) -> Iterator[None]:
    """
    Share one Pool of `jobs` processes with every run_partitioned call made
    inside the block. Nested blocks reuse the outer pool.
    """
    global _shared_pool, _shared_jobs
    if jobs <= 1 or _shared_pool is not None:
        yield
        return
    logger.debug(f"Starting a pool of {jobs} workers")
    with Pool(processes=jobs) as pool:
        _shared_pool, _shared_jobs = pool, jobs
        try:
            yield
        finally:
            _shared_pool, _shared_jobs = None, 0


def _run_inline(worker, payload, total: int, stop_on) -> List[Any]:
    results = []
    for start, stop in partition(total, 1 if stop_on is None else CHUNKS_PER_JOB):
        result = worker((payload, start, stop))
        results.append(result)
        if stop_on is not None and stop_on(result):
            break
    return results


def run_partitioned(
    worker: Callable[[Tuple[Any, int, int]], Any],
    payload: Any,
    total: int,
    jobs: int = 1,
    stop_on: Optional[Callable[[Any], bool]] = None,
) -> List[Any]:
    """
    Evaluate `worker((payload, start, stop))` over a partition of [0, total).

    Args:
        worker: Module-level function (picklable) taking (payload, start, stop)
        payload: Picklable data shared by all chunks
        total: Size of the index range
        jobs: Worker process count; 1 runs in-process, as does any range
            with fewer than MIN_POINTS_PER_JOB points per worker
        stop_on: In-process only: stop after the first chunk result for which
            this returns True (later chunks are not evaluated)

    Returns:
        Chunk results in chunk order
    """
    if jobs <= 1 or total < jobs * MIN_POINTS_PER_JOB:
        return _run_inline(worker, payload, total, stop_on)

    ranges = partition(total, jobs * CHUNKS_PER_JOB)
    tasks = [(payload, start, stop) for start, stop in ranges]
    if _shared_pool is not None and _shared_jobs == jobs:
        logger.debug(f"Running {len(ranges)} chunks of a {total}-point range on the shared pool")
        return _shared_pool.map(worker, tasks)
    logger.debug(f"Running {len(ranges)} chunks of a {total}-point range on {jobs} new workers")
    with Pool(processes=jobs) as pool:
        return pool.map(worker, tasks)


def first_hit(results: List[Any]) -> Any:
    """First non-None chunk result, i.e. the hit with the smallest index."""
    for result in results:
        if result is not None:
            return result
    return None
