"""Deterministic compensated summation.

Energy and zeta sums must be reproducible to the last bit regardless of
how work is distributed over threads.  The scheme here fixes canonical
chunk boundaries (independent of thread count), sums each chunk with
numpy's pairwise reduction, and merges the chunk partials with
math.fsum, which is exact.  Any parallel driver may evaluate chunks out
of order as long as the merge consumes them in canonical order; since
the partials themselves are order-independent inputs to an exact merge,
the final double is identical for every thread count.
"""

from __future__ import annotations

import math

import numpy as np

CHUNK = 4096


def compensated_sum(values) -> float:
    """Sum float64 values in canonical order with compensated merging."""
    arr = np.ascontiguousarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        return 0.0
    partials = [float(arr[i:i + CHUNK].sum()) for i in range(0, arr.size, CHUNK)]
    return math.fsum(partials)
