"""Order-preserving process-pool map and index-range sharding.

Every caller merges shard results in shard order, so output never depends on
the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Sequence, Tuple, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def shard_bounds(total: int, shards: int) -> List[Tuple[int, int]]:
    """Split ``range(total)`` into at most ``shards`` contiguous non-empty ranges."""
    shards = max(1, min(shards, total)) if total else 1
    step, extra = divmod(total, shards)
    bounds, start = [], 0
    for k in range(shards):
        stop = start + step + (1 if k < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def chunk_seeds(seed: int, total: int, chunk: int) -> List[Tuple[np.random.SeedSequence, int]]:
    """Fixed-size sample chunks, each with its own spawned seed.

    The chunking depends only on ``total`` and ``chunk``, so a report built from
    these is identical for any number of workers.
    """
    sizes = [min(chunk, total - s) for s in range(0, total, chunk)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return list(zip(children, sizes))


def merge_counts(parts: Sequence[Sequence[int]]) -> List[int]:
    width = max((len(p) for p in parts), default=0)
    out = [0] * width
    for part in parts:
        for i, v in enumerate(part):
            out[i] += v
    return out
