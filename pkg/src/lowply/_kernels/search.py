"""Graph search kernels: shortest cycle, and the exact min-ply basis search.

These are branchy integer loops with no useful vectorised form, so the
fallback is the same Python body run without compilation.
"""

import numpy as np

from ._jit import maybe_njit


def _shortest_cycle(indptr, nbr, eid, alive):
    n = indptr.shape[0] - 1
    m = alive.shape[0]
    best = n + 1
    best_s = -1
    best_u = -1
    best_w = -1
    best_e = -1
    dist = np.empty(n, dtype=np.int64)
    pv = np.empty(n, dtype=np.int64)
    pe = np.empty(n, dtype=np.int64)
    keep_pv = np.empty(n, dtype=np.int64)
    keep_pe = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        if best == 3:
            break
        if indptr[s] == indptr[s + 1]:
            continue
        for x in range(n):
            dist[x] = -1
        dist[s] = 0
        pv[s] = -1
        pe[s] = -1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            if 2 * dist[u] + 1 >= best:
                break
            for p in range(indptr[u], indptr[u + 1]):
                e = eid[p]
                if not alive[e] or e == pe[u]:
                    continue
                w = nbr[p]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    pv[w] = u
                    pe[w] = e
                    queue[tail] = w
                    tail += 1
                else:
                    length = dist[u] + dist[w] + 1
                    if length < best:
                        best = length
                        best_s = s
                        best_u = u
                        best_w = w
                        best_e = e
                        for x in range(n):
                            keep_pv[x] = pv[x]
                            keep_pe[x] = pe[x]
    if best_s < 0:
        return np.zeros(0, dtype=np.int64)
    mark = np.zeros(m, dtype=np.bool_)
    mark[best_e] = True
    x = best_u
    while x != best_s:
        mark[keep_pe[x]] = not mark[keep_pe[x]]
        x = keep_pv[x]
    x = best_w
    while x != best_s:
        mark[keep_pe[x]] = not mark[keep_pe[x]]
        x = keep_pv[x]
    return np.flatnonzero(mark).astype(np.int64)


_shortest_cycle_jit = maybe_njit(_shortest_cycle)


def shortest_cycle_numba(indptr, nbr, eid, alive):
    """Edge ids of a shortest cycle among ``alive`` edges; empty if acyclic.

    ``indptr``/``nbr``/``eid`` is the CSR adjacency of the whole graph. Ties go
    to the first cycle met scanning BFS roots in vertex order.
    """
    return _shortest_cycle_jit(indptr, nbr, eid, alive)


def shortest_cycle_python(indptr, nbr, eid, alive):
    return _shortest_cycle(indptr, nbr, eid, alive)


def _min_ply_search(elems, coords, r):
    N, m = elems.shape
    best = r + 1
    best_sel = np.full(r, -1, dtype=np.int64)
    if r == 0:
        return 0, best_sel
    sel = np.zeros(r, dtype=np.int64)
    ply = np.zeros(m, dtype=np.int64)
    spans = np.zeros(r + 1, dtype=np.uint64)
    spans[0] = np.uint64(1)
    maxes = np.zeros(r + 1, dtype=np.int64)
    depth = 0
    i = 0
    while True:
        if depth == r:
            if maxes[r] < best:
                best = maxes[r]
                for x in range(r):
                    best_sel[x] = sel[x]
                if best <= 1:
                    break
            depth -= 1
            j = sel[depth]
            for e in range(m):
                ply[e] -= elems[j, e]
            i = j + 1
            continue
        if i < N and N - i >= r - depth:
            c = coords[i]
            if not ((spans[depth] >> np.uint64(c)) & np.uint64(1)):
                newmax = maxes[depth]
                for e in range(m):
                    if elems[i, e]:
                        ply[e] += 1
                        if ply[e] > newmax:
                            newmax = ply[e]
                if newmax < best:
                    sel[depth] = i
                    # span bitmask over the 2**r coordinate vectors, closed under ^c
                    span = spans[depth]
                    grown = span
                    for x in range(64):
                        if (span >> np.uint64(x)) & np.uint64(1):
                            grown |= np.uint64(1) << np.uint64(x ^ c)
                    spans[depth + 1] = grown
                    maxes[depth + 1] = newmax
                    depth += 1
                    i += 1
                    continue
                for e in range(m):
                    ply[e] -= elems[i, e]
            i += 1
            continue
        if depth == 0:
            break
        depth -= 1
        j = sel[depth]
        for e in range(m):
            ply[e] -= elems[j, e]
        i = j + 1
    return best, best_sel


_min_ply_search_jit = maybe_njit(_min_ply_search)


def min_ply_search_numba(elems, coords, r):
    """Branch-and-bound for an independent ``r``-subset of minimum max-ply.

    ``elems`` is an (N, m) uint8 incidence matrix of candidate Eulerian
    subgraphs and ``coords[i]`` their coordinates (an ``r``-bit integer) in a
    fixed basis; ``r <= 6``.  Returns ``(best_ply, selected_row_indices)``.
    """
    return _min_ply_search_jit(elems, coords, r)


def min_ply_search_python(elems, coords, r):
    return _min_ply_search(elems, coords, r)
