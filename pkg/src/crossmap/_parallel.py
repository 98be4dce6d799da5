"""Worker resolution and tiled execution for the array kernels.

Kernels split their output into fixed-size row tiles and write disjoint
slices, so results are bit-identical for any worker count; the pool only
changes wall-clock time. numpy releases the interpreter lock inside the
per-tile array operations, which is where all the work happens.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .errors import ParameterError

WORKERS_ENV_VAR = "CROSSMAP_WORKERS"
TILE_ROWS = 256


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument wins over the environment variable, which wins over core count."""
    if workers is None:
        env = os.environ.get(WORKERS_ENV_VAR)
        if env is not None:
            try:
                workers = int(env)
            except ValueError:
                raise ParameterError(f"{WORKERS_ENV_VAR} must be an integer, got {env!r}") from None
        else:
            workers = os.cpu_count() or 1
    workers = int(workers)
    if workers < 1:
        raise ParameterError(f"worker count must be >= 1, got {workers}")
    return workers


def run_tiled(total: int, task: Callable[[int, int], None], workers: int,
              tile: int | None = None) -> None:
    """Invoke task(start, stop) over [0, total) in fixed tiles, possibly in parallel."""
    tile = TILE_ROWS if tile is None else tile
    spans = [(start, min(start + tile, total)) for start in range(0, total, tile)]
    if min(workers, len(spans)) <= 1:
        for start, stop in spans:
            task(start, stop)
        return
    with ThreadPoolExecutor(max_workers=min(workers, len(spans))) as pool:
        # Draining the iterator re-raises the first worker exception, if any.
        for _ in pool.map(lambda span: task(*span), spans):
            pass
