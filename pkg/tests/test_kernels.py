"""The numba and numpy flavours of every kernel must agree exactly."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowply import _kernels
from lowply._kernels import gf2, search, vsep
from lowply.generators import grid
from lowply.graph import Graph


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 12), st.integers(1, 150), st.integers(0, 2**31 - 1))
def test_independent_rows_agree(rows, cols, seed):
    rng = np.random.default_rng(seed)
    mat = rng.random((rows, cols)) < rng.uniform(0.05, 0.6)
    if rows > 2:
        mat[-1] = mat[0] ^ mat[1]
    a = gf2.independent_rows_numba(mat)
    b = gf2.independent_rows_numpy(mat)
    assert np.array_equal(a, b)


def test_independent_rows_picks_earliest():
    mat = np.array([[1, 1, 0], [1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=bool)
    for fn in (gf2.independent_rows_numba, gf2.independent_rows_numpy):
        assert fn(mat).tolist() == [True, False, True, False]


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 14), st.integers(0, 2**31 - 1))
def test_shortest_cycle_agrees(n, seed):
    rng = np.random.default_rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
    g = Graph(n, pairs)
    indptr, nbr, eid = g.csr()
    alive = rng.random(g.m) < 0.9
    a = search.shortest_cycle_numba(indptr, nbr, eid, alive)
    b = search.shortest_cycle_python(indptr, nbr, eid, alive)
    assert np.array_equal(a, b)


def test_shortest_cycle_length_is_girth():
    import networkx as nx

    g = grid(4, 5)[0]
    cyc = _kernels.shortest_cycle(*g.csr(), np.ones(g.m, dtype=bool))
    assert cyc.size == 4
    pet = nx.petersen_graph()
    g = Graph(10, list(pet.edges()))
    assert _kernels.shortest_cycle(*g.csr(), np.ones(g.m, dtype=bool)).size == 5
    assert _kernels.shortest_cycle(*Graph(3, [(0, 1)]).csr(), np.ones(1, dtype=bool)).size == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 11), st.integers(0, 2**31 - 1))
def test_vertex_separation_agrees(n, seed):
    rng = np.random.default_rng(seed)
    masks = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.4:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
    fa, la = vsep.vertex_separation_numba(masks)
    fb, lb = vsep.vertex_separation_numpy(masks)
    assert np.array_equal(fa, fb)
    assert fa[-1] == fb[-1]


def test_backend_switch():
    code = "import lowply._kernels as k; print(k.BACKEND)"
    env = dict(os.environ, LOWPLY_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
    env["LOWPLY_BACKEND"] = "bogus"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode != 0


@pytest.mark.skipif(not _kernels.NUMBA_AVAILABLE, reason="numba missing")
def test_numba_is_default():
    if os.environ.get("LOWPLY_BACKEND", "numba") == "numba":
        assert _kernels.BACKEND == "numba"


def test_heuristic_results_match_across_backends():
    code = (
        "from lowply.generators import complete;"
        "from lowply.builders import maxply_generating_set as m;"
        "print([e.edge_ids.tolist() for e in m(complete(9)[0])])"
    )
    outs = set()
    for backend in ("numba", "numpy"):
        env = dict(os.environ, LOWPLY_BACKEND=backend)
        outs.add(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout)
    assert len(outs) == 1 and outs.pop().startswith("[[")
