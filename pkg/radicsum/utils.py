"""
radicsum.utils
==============

Utility functions shared across the package.
"""
from concurrent.futures import ProcessPoolExecutor
import logging
import statistics
import time
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

from rich.progress import track

from radicsum.logging import CONSOLE


LOGGER = logging.getLogger(__name__)


def get_block_ranges(
        start: int,
        stop: int,
        block_size: int,
        ascending: bool = True
) -> List[Tuple[int, int]]:
    """
    Split the integer range [start, stop) into contiguous blocks.

    Args:
        start: First integer of the range.
        stop: End of the range (exclusive).
        block_size: The maximum number of integers per block.
        ascending: If 'False', the blocks are returned from the end of the
            range towards its start.

    Return:
        A list of ``(block_start, block_stop)`` tuples covering the range.
    """
    if block_size < 1:
        raise ValueError("'block_size' must be positive.")
    blocks = [
        (lower, min(lower + block_size, stop))
        for lower in range(start, stop, block_size)
    ]
    if not ascending:
        blocks.reverse()
    return blocks


def split_range(start: int, stop: int, n_parts: int) -> List[Tuple[int, int]]:
    """
    Partition [start, stop) into at most 'n_parts' ranges of nearly equal
    length. The partitioning depends only on the arguments.

    Args:
        start: First integer of the range.
        stop: End of the range (exclusive).
        n_parts: The number of ranges.

    Return:
        A list of non-empty ``(part_start, part_stop)`` tuples in ascending
        order.
    """
    length = max(stop - start, 0)
    n_parts = max(1, min(n_parts, length))
    bounds = [start + (length * ind) // n_parts for ind in range(n_parts + 1)]
    return [
        (lower, upper) for lower, upper in zip(bounds[:-1], bounds[1:])
        if upper > lower
    ]


def map_ordered(
        fun: Callable[..., Any],
        args: Iterable[Any],
        n_workers: int = 1,
        description: Optional[str] = None
) -> List[Any]:
    """
    Apply a function to a sequence of arguments, optionally in parallel.

    Results are always returned in the order of the arguments, so that
    reports built from them do not depend on scheduling.

    Args:
        fun: A picklable callable taking a single argument.
        args: The arguments.
        n_workers: The number of worker processes. With one worker, the
            function is applied sequentially in the current process.
        description: If given, a progress bar with this description is
            shown on the error console.

    Return:
        A list containing the results.
    """
    args = list(args)

    def progress(items):
        if description is None:
            return items
        return track(
            items,
            description=description,
            total=len(args),
            console=CONSOLE,
            transient=True,
        )

    if n_workers <= 1 or len(args) <= 1:
        return [fun(arg) for arg in progress(args)]
    LOGGER.debug("Evaluating %s tasks on %s processes.", len(args), n_workers)
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        tasks = [pool.submit(fun, arg) for arg in args]
        return [task.result() for task in progress(tasks)]


def timing_available() -> bool:
    """
    Determine whether the performance counter resolves sub-millisecond
    intervals.
    """
    info = time.get_clock_info("perf_counter")
    return info.resolution <= 1e-3


def median_time_ns(
        fun: Callable[[], Any],
        repetitions: int,
        inner: int = 1,
        timer: Optional[Callable[[], int]] = None
) -> float:
    """
    Median wall time of a callable.

    Args:
        fun: The callable to time.
        repetitions: How many timed repetitions to run.
        inner: Number of calls per repetition. The time of a repetition is
            divided by this number, which resolves very short calls.
        timer: Nanosecond clock, defaults to ``time.perf_counter_ns``.

    Return:
        The median time per call in nanoseconds.
    """
    if timer is None:
        timer = time.perf_counter_ns
    times = []
    for _ in range(repetitions):
        start = timer()
        for _ in range(inner):
            fun()
        times.append((timer() - start) / inner)
    return float(statistics.median(times))


def is_strictly_ascending(values: Sequence[float]) -> bool:
    """
    Whether a sequence is strictly ascending.
    """
    return all(lower < upper for lower, upper in zip(values[:-1], values[1:]))
