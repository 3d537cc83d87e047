# -*- coding: utf-8 -*-
"""
Worker pool helpers.

Work is split into contiguous chunks of an index range and handed to a
thread pool; results come back in chunk order so that reductions over them
do not depend on scheduling.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple, TypeVar

import numpy as np

from .errors import InvalidParameterError

logger = logging.getLogger(__name__)

WORKERS_ENV = "BACKBONE_WORKERS"

T = TypeVar("T")


def resolve_workers(workers: Optional[int] = None) -> int:
    '''
    Number of workers to use.

    An explicit value wins, then the BACKBONE_WORKERS environment variable,
    then 1.
    '''
    if workers is None:
        raw = os.environ.get(WORKERS_ENV, "").strip()
        if not raw:
            return 1
        try:
            workers = int(raw)
        except ValueError:
            raise InvalidParameterError(
                f"{WORKERS_ENV} must be a positive integer. It was: {raw!r}"
            ) from None
    if workers < 1:
        raise InvalidParameterError(f"workers must be >= 1. It was: {workers}")
    return workers


def chunk_ranges(count: int, workers: int) -> List[Tuple[int, int]]:
    if count <= 0:
        return []
    parts = max(1, min(workers, count))
    bounds = np.linspace(0, count, parts + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def map_chunks(func: Callable[[int, int], T], count: int,
               workers: Optional[int] = None) -> List[T]:
    '''
    Run func(start, stop) over contiguous chunks of range(count).

    Parameters
    ----------
    func : callable
            Called once per chunk with the chunk bounds
    count : int
            Size of the index range
    workers : int | None
            Pool size, see resolve_workers (default None)

    Returns
    -------
    list with one result per chunk, in chunk order
    '''
    workers = resolve_workers(workers)
    ranges = chunk_ranges(count, workers)
    if workers == 1 or len(ranges) <= 1:
        return [func(start, stop) for start, stop in ranges]
    logger.debug("dispatching %d chunks to %d workers", len(ranges), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, start, stop) for start, stop in ranges]
        return [f.result() for f in futures]


def spawn_generators(seed: Optional[int], count: int) -> List[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child) for child in children]
