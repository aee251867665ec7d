"""Ordered worker pool for per-sample tasks.

Results are always returned in task order, whatever the pool size, so
reductions over them are reproducible.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

__all__ = [
    "ordered_map",
]


T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
        fn: Callable[[T], R],
        tasks: Iterable[T],
        workers: int = 1,
        chunksize: int = 64
) -> list[R]:
    """Apply `fn` to every task, in parallel when `workers > 1`.

    Args:
        fn: A picklable module-level function.
        tasks: Picklable task arguments.
        workers: Number of worker processes; 1 runs in-process.
        chunksize: Number of tasks handed to a worker at once.

    Returns:
        The results in the order of `tasks`.
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, chunksize)))
