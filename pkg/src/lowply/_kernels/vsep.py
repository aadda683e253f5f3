"""Vertex-separation dynamic program over vertex subsets.

For a prefix set S of a linear layout, the boundary of S is the set of its
vertices with a neighbour outside S.  ``f[S]`` is the least possible maximum
boundary size over all layouts whose first |S| vertices are S, so ``f[full]``
is the vertex separation number (= pathwidth).  ``last[S]`` is the lowest
vertex that can be placed last in S while attaining ``f[S]``.
"""

import numpy as np

from ._jit import maybe_njit


def _vsep_loop(nbr_masks):
    n = nbr_masks.shape[0]
    size = 1 << n
    f = np.zeros(size, dtype=np.int8)
    last = np.full(size, -1, dtype=np.int8)
    for S in range(1, size):
        boundary = 0
        for u in range(n):
            if (S >> u) & 1 and (nbr_masks[u] & ~S) != 0:
                boundary += 1
        best = 127
        arg = -1
        for v in range(n):
            if (S >> v) & 1:
                val = f[S ^ (1 << v)]
                if val < best:
                    best = val
                    arg = v
        f[S] = max(best, boundary)
        last[S] = arg
    return f, last


_vsep_jit = maybe_njit(_vsep_loop)


def vertex_separation_numba(nbr_masks):
    return _vsep_jit(np.asarray(nbr_masks, dtype=np.int64))


def vertex_separation_numpy(nbr_masks):
    nbr_masks = np.asarray(nbr_masks, dtype=np.int64)
    n = nbr_masks.shape[0]
    size = 1 << n
    S = np.arange(size, dtype=np.int64)
    boundary = np.zeros(size, dtype=np.int8)
    for u in range(n):
        boundary += (((S >> u) & 1) != 0) & ((nbr_masks[u] & ~S) != 0)
    popcount = np.zeros(size, dtype=np.int8)
    for u in range(n):
        popcount += ((S >> u) & 1).astype(np.int8)
    f = np.zeros(size, dtype=np.int8)
    last = np.full(size, -1, dtype=np.int8)
    for p in range(1, n + 1):
        layer = S[popcount == p]
        best = np.full(layer.size, 127, dtype=np.int8)
        arg = np.full(layer.size, -1, dtype=np.int8)
        for v in range(n):
            has = ((layer >> v) & 1) != 0
            vals = f[layer[has] ^ (1 << v)]
            better = vals < best[has]
            idx = np.flatnonzero(has)[better]
            best[idx] = vals[better]
            arg[idx] = v
        f[layer] = np.maximum(best, boundary[layer])
        last[layer] = arg
    return f, last
