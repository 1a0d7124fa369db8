"""Compiled Gray-code walk used by ``norm_inf_1`` for large orders.

The walk over ``2^(n-1)`` sign vectors is cut into ``2^prefix_bits`` chunks
of consecutive Gray indices.  Chunk ``p`` covers global indices
``p * 2^m .. (p + 1) * 2^m - 1``; every chunk is an independent walk, so the
result does not depend on how many threads run them.
"""

import numpy as np
from numba import config, njit, prange

# the bundled TBB is too old and only produces a warning; skip it
config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@njit(cache=True)
def _walk_chunk(a, p, m):
    n = a.shape[0]
    g0 = p << m
    code = g0 ^ (g0 >> 1)
    x = np.ones(n, dtype=np.int64)
    for b in range(n - 1):
        if (code >> b) & 1:
            x[b + 1] = -1
    z = np.zeros(n, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            z[i] += a[i, j] * x[j]
    best = 0
    for i in range(n):
        best += abs(z[i])
    best_s = 0
    for s in range(1, 1 << m):
        b = 0
        t = s
        while (t & 1) == 0:
            t >>= 1
            b += 1
        c = b + 1
        x[c] = -x[c]
        step = 2 * x[c]
        tot = 0
        for i in range(n):
            z[i] += step * a[i, c]
            tot += abs(z[i])
        if tot > best:
            best = tot
            best_s = s
    return best, best_s


@njit(parallel=True, cache=True)
def walk_chunks(a, prefix_bits, m):
    chunks = 1 << prefix_bits
    values = np.zeros(chunks, dtype=np.int64)
    offsets = np.zeros(chunks, dtype=np.int64)
    for p in prange(chunks):
        v, s = _walk_chunk(a, p, m)
        values[p] = v
        offsets[p] = s
    return values, offsets
