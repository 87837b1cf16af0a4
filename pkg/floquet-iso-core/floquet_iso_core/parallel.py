# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Chunked evaluation of batched kernels over point arrays.

Chunks are fixed by ``chunk_size`` alone and results are reassembled by chunk
index, so the output does not depend on the thread count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

logger = logging.getLogger(__name__)

BatchFn = Callable[[np.ndarray], np.ndarray]


def map_chunks(fn: BatchFn, points: np.ndarray, *, chunk_size: int = 256, threads: int = 1) -> np.ndarray:
    """Apply ``fn`` to ``points`` (leading axis = batch) chunk by chunk.

    Args:
        fn: Maps a ``(B, ...)`` array to a ``(B, ...)`` array.
        points: Array whose leading axis enumerates evaluation points.
        chunk_size: Points per call of ``fn``.
        threads: Worker threads; 1 evaluates inline.

    Returns:
        The concatenation of ``fn`` over the chunks, in point order.
    """
    points = np.asarray(points)
    total = points.shape[0]
    if total == 0:
        return fn(points)
    bounds = [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]
    logger.debug(f"Evaluating {total} points in {len(bounds)} chunks on {threads} thread(s)")

    if threads <= 1 or len(bounds) == 1:
        parts = [fn(points[start:stop]) for start, stop in bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda span: fn(points[span[0] : span[1]]), bounds))
    return np.concatenate(parts, axis=0)
