"""
Ordered process-pool mapping for scans.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar
import logging

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """
    Apply ``func`` to every item, in worker processes when jobs > 1.

    Results come back in input order, so output never depends on ``jobs``.
    ``func`` must be a module-level function.
    """
    work = list(items)
    if jobs <= 1 or len(work) <= 1:
        return [func(item) for item in work]

    workers = min(jobs, len(work))
    logger.debug(f"Mapping {len(work)} tasks over {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, work))
