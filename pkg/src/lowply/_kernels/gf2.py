"""GF(2) elimination: which rows of a 0/1 matrix are greedily independent.

Both routes return the same mask, the lexicographically earliest basis of the
row span (the greedy matroid basis in row order), so the rank is its sum.
They get there differently: the compiled path inserts rows one at a time into
a packed echelon basis, the numpy path row-reduces the transpose and reads off
its pivot columns.
"""

import numpy as np

from ._jit import maybe_njit


def pack_rows(mat):
    """Pack a (k, m) 0/1 matrix into (k, ceil(m/64)) uint64 words."""
    mat = np.ascontiguousarray(mat, dtype=np.bool_)
    k, m = mat.shape
    nbytes = max(1, -(-m // 64)) * 8
    packed = np.zeros((k, nbytes), dtype=np.uint8)
    if m:
        raw = np.packbits(mat, axis=1, bitorder="little")
        packed[:, : raw.shape[1]] = raw
    return packed.view(np.uint64)


def _insert_rows(rows):
    k, w = rows.shape
    cap = min(k, w * 64)
    basis = np.zeros((max(cap, 1), w), dtype=np.uint64)
    piv_word = np.zeros(max(cap, 1), dtype=np.int64)
    piv_mask = np.zeros(max(cap, 1), dtype=np.uint64)
    keep = np.zeros(k, dtype=np.bool_)
    row = np.zeros(w, dtype=np.uint64)
    nb = 0
    for i in range(k):
        for x in range(w):
            row[x] = rows[i, x]
        for j in range(nb):
            pw = piv_word[j]
            if row[pw] & piv_mask[j]:
                for x in range(pw, w):
                    row[x] ^= basis[j, x]
        lead = -1
        for x in range(w):
            if row[x] != 0:
                lead = x
                break
        if lead < 0:
            continue
        word = row[lead]
        low = word & (~word + np.uint64(1))
        for x in range(w):
            basis[nb, x] = row[x]
        piv_word[nb] = lead
        piv_mask[nb] = low
        nb += 1
        keep[i] = True
        if nb == cap:
            break
    return keep


_insert_rows_jit = maybe_njit(_insert_rows)


def independent_rows_numba(mat):
    """Mask of the earliest independent rows of ``mat`` (compiled kernel)."""
    mat = np.asarray(mat)
    if mat.shape[0] == 0:
        return np.zeros(0, dtype=np.bool_)
    return _insert_rows_jit(pack_rows(mat))


def independent_rows_numpy(mat):
    """Mask of the earliest independent rows of ``mat`` (vectorised numpy)."""
    mat = np.ascontiguousarray(mat, dtype=np.bool_)
    k, m = mat.shape
    keep = np.zeros(k, dtype=np.bool_)
    if k == 0 or m == 0:
        return keep
    # rows of T are edge coordinates, packed along the vector index
    T = np.packbits(mat.T, axis=1, bitorder="little")
    free = np.ones(m, dtype=np.bool_)
    for j in range(k):
        byte, bit = divmod(j, 8)
        hits = np.flatnonzero(((T[:, byte] >> bit) & 1).astype(np.bool_) & free)
        if hits.size == 0:
            continue
        p = hits[0]
        keep[j] = True
        free[p] = False
        if hits.size > 1:
            T[hits[1:], byte:] ^= T[p, byte:]
    return keep
