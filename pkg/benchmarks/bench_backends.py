"""Time the numba kernels against their numpy/python fallbacks.

    python3 benchmarks/bench_backends.py [--repeat 5]

Both flavours are imported directly, so no environment switching is needed.
The first numba call is excluded from timing (it pays for compilation).
"""

import argparse
import time

import numpy as np

from lowply._kernels import NUMBA_AVAILABLE, gf2, search, vsep
from lowply.generators import cycle, grid
from lowply.verification import eulerian_subgraphs


def best_of(fn, args, repeat):
    fn(*args)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def vsep_masks(g):
    masks = np.zeros(g.n, dtype=np.int64)
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def cases():
    rng = np.random.default_rng(0)
    mat = rng.random((400, 600)) < 0.1
    yield "gf2 rank 400x600", gf2.independent_rows_numba, gf2.independent_rows_numpy, (mat,)

    # a single long cycle forces the search to sweep the whole graph
    g = cycle(1000)[0]
    csr = g.csr()
    alive = np.ones(g.m, dtype=bool)
    yield "shortest cycle C1000", search.shortest_cycle_numba, search.shortest_cycle_python, (*csr, alive)

    masks = vsep_masks(grid(3, 5)[0])
    yield "vertex separation 3x5 grid", vsep.vertex_separation_numba, vsep.vertex_separation_numpy, (masks,)

    g = grid(3, 3)[0]
    rows, coords = eulerian_subgraphs(g)
    order = np.argsort(rows.sum(axis=1), kind="stable")
    args = (rows[order].astype(np.uint8), coords[order], 4)
    yield "min-ply search 3x3 grid", search.min_ply_search_numba, search.min_ply_search_python, args


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()
    if not NUMBA_AVAILABLE:
        print("numba not importable; both columns run the same code")
    print(f"{'kernel':32} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, fast, slow, args in cases():
        a = best_of(fast, args, opts.repeat)
        b = best_of(slow, args, max(1, opts.repeat // 2))
        print(f"{name:32} {a:10.4f} {b:10.4f} {b / a:8.1f}")


if __name__ == "__main__":
    main()
