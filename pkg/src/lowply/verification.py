"""Independent auditors for builder outputs.

Everything here is recomputed from raw inputs (graph, decomposition, the
elements of a generating set and the forests recorded in a build trace).
Rank uses Python-integer elimination rather than the packed kernels, and
skeletons are found by a separation test rather than leaf pruning, so an
auditor does not inherit a bug from the code it checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .cycle_space import GeneratingSet, fundamental_basis
from .forest import spanning_forest
from .graph import DisjointSets, EdgeSubgraph, Graph
from .path_decomp import PathDecomposition, SizeError

BRUTE_FORCE_RANK_CAP = 5


@dataclass
class Check:
    name: str
    bound: float | int | None
    observed: float | int | None
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "bound": self.bound, "observed": self.observed, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class AuditReport:
    instance: str = ""
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, list] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def add(self, name, bound, observed, passed, detail="") -> Check:
        c = Check(name, bound, observed, bool(passed), detail)
        self.checks.append(c)
        return c

    def merge(self, other: AuditReport) -> AuditReport:
        self.checks.extend(other.checks)
        self.tables.update(other.tables)
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, tables: bool = False) -> dict:
        out = {"instance": self.instance, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
        if tables:
            out["tables"] = self.tables
        return out


def _rank_bigint(rows) -> int:
    # xor-basis keyed by leading bit
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def _as_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits.astype(np.uint8), bitorder="little").tobytes(), "little")


def _cycle_dim(g: Graph, edge_ids=None) -> int:
    ids = range(g.m) if edge_ids is None else edge_ids
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cyc = 0
    for e in ids:
        a, b = (find(x) for x in g.edges[e])
        if a == b:
            cyc += 1
        else:
            parent[a] = b
    return cyc


def _edge_count_parities(g: Graph, bits: np.ndarray) -> bool:
    deg = np.zeros(g.n, dtype=np.int64)
    ends = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)[bits]
    np.add.at(deg, ends.ravel(), 1)
    return not (deg & 1).any()


def verify_generating(g: Graph, B, edge_ids=None, instance: str = "") -> AuditReport:
    """Every element Eulerian (and inside the target), and rank equal to the cycle-space dimension."""
    rep = AuditReport(instance)
    allowed = None
    if edge_ids is not None:
        edge_ids = sorted(int(e) for e in edge_ids)
        allowed = np.zeros(g.m, dtype=bool)
        allowed[edge_ids] = True
    bad = []
    for i, el in enumerate(B):
        bits = np.asarray(el.bits, dtype=bool)
        if bits.shape != (g.m,) or not _edge_count_parities(g, bits):
            bad.append(i)
        elif allowed is not None and (bits & ~allowed).any():
            bad.append(i)
    rep.add("eulerian", 0, len(bad), not bad, f"first bad element {bad[0]}" if bad else "")
    dim = _cycle_dim(g, edge_ids)
    rank = _rank_bigint(_as_int(np.asarray(el.bits)) for el in B) if not bad else -1
    rep.add("rank", dim, rank, rank == dim)
    return rep


def verify_ply_bound(B, bound, instance: str = "") -> AuditReport:
    """Maximum ply recomputed from the elements, compared with ``bound``."""
    rep = AuditReport(instance)
    rows = [np.asarray(el.bits, dtype=np.int64) for el in B]
    observed = int(np.sum(rows, axis=0).max()) if rows and rows[0].size else 0
    rep.add("ply", bound, observed, observed <= bound)
    return rep


def _ply_counts(B, m: int, upto: int | None = None) -> np.ndarray:
    counts = np.zeros(m, dtype=np.int64)
    for el in list(B)[:upto]:
        counts += np.asarray(el.bits, dtype=np.int64)
    return counts


def skeleton_paths(g: Graph, forest_edges, terminals) -> list[list[int]]:
    """Edge sets of the skeleton edges of a forest on ``terminals``.

    A forest edge is kept iff both sides of it hold a terminal.  Kept edges
    meeting at a non-terminal vertex of kept-degree 2 are glued together.
    """
    terminals = set(terminals)
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in forest_edges:
        u, v = g.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    kept = []
    seen = set()
    for start in sorted(adj):
        if start in seen:
            continue
        # iterative DFS: postorder terminal counts per subtree
        order, parent_of, parent_edge, stack = [], {}, {}, [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            order.append(u)
            for w, e in adj[u]:
                if w not in seen:
                    seen.add(w)
                    parent_of[w], parent_edge[w] = u, e
                    stack.append(w)
        below = {u: int(u in terminals) for u in order}
        for u in reversed(order):
            if u in parent_of:
                below[parent_of[u]] += below[u]
        total = below[start]
        for u in order:
            if u in parent_of and 0 < below[u] < total:
                kept.append(parent_edge[u])
    kdeg: dict[int, list[int]] = {}
    for e in kept:
        for x in g.edges[e]:
            kdeg.setdefault(x, []).append(e)
    idx = {e: j for j, e in enumerate(kept)}
    dsu = DisjointSets(len(kept))
    for x, es in kdeg.items():
        if x not in terminals and len(es) == 2:
            dsu.union(idx[es[0]], idx[es[1]])
    groups: dict[int, list[int]] = {}
    for e in kept:
        groups.setdefault(dsu.find(idx[e]), []).append(e)
    return sorted(sorted(p) for p in groups.values())


def forest_path_ply_audit(g: Graph, trace, B, t: int | None = None, instance: str = "") -> AuditReport:
    """Per step ``n`` and ``c`` in ``0..2t-1``: skeleton edges on ``B_n`` of path-ply at least ``2c+1`` number at most ``2t-c-1``."""
    rep = AuditReport(instance)
    t = trace.width if t is None else t
    table = []
    violations = 0
    worst = None
    for step in trace.steps:
        ply = _ply_counts(B, g.m, step.basis_size)
        paths = skeleton_paths(g, step.forest_edges, step.bag)
        path_ply = [int(ply[p].max()) for p in paths]
        counts = [sum(1 for p in path_ply if p >= 2 * c + 1) for c in range(2 * t)]
        for c, cnt in enumerate(counts):
            slack = (2 * t - c - 1) - cnt
            if worst is None or slack < worst:
                worst = slack
            if slack < 0:
                violations += 1
        table.append({"step": step.index, "skeleton_edges": len(paths), "counts": counts})
    rep.tables["forest_path_ply"] = table
    rep.add("forest_path_ply", 0, violations, violations == 0, f"min slack {worst}")
    return rep


def old_skeleton_edge_audit(g: Graph, d: PathDecomposition, trace, B, k: int | None = None, b: int | None = None,
                           instance: str = "") -> AuditReport:
    """Per prefix step ``n'`` and bag ``i <= n'``: the ``i``-old skeleton edges on ``A_i`` number at most ``2k - 2 - z_i``.

    ``z_i`` is the excess of the largest ply among edges first covered at bag
    ``i`` over ``b``, in units of the largest two-tree ply seen so far.
    ``A_i`` is the adhesion to the next bag (empty after the current prefix's
    last bag).
    """
    rep = AuditReport(instance)
    k = trace.k if k is None else k
    b = trace.b if b is None else b
    if trace.degenerate:
        rep.add("old_skeleton_edge", None, None, True, "adhesion at most 1: not applicable")
        return rep
    birth = np.full(g.m, -1, dtype=np.int64)
    for i, bag in enumerate(d):
        for e in range(g.m):
            u, v = g.edges[e]
            if birth[e] < 0 and u in bag and v in bag:
                birth[e] = i
    table = []
    violations = 0
    worst = None
    d_max = 0
    for step in trace.steps:
        n1 = step.index
        d_max = max(d_max, step.delta_ply)
        ply = _ply_counts(B, g.m, step.basis_size)
        for i in range(n1 + 1):
            born = np.flatnonzero(birth == i)
            if born.size == 0:
                continue
            excess = int(ply[born].max()) - b
            if d_max == 0:
                if excess > 0:
                    violations += 1
                    table.append({"step": n1, "i": i, "z": None, "old": None})
                    continue
                z = 0.0
            else:
                z = excess / d_max
            A = d[i] & d[i + 1] if i < n1 else frozenset()
            paths = skeleton_paths(g, step.forest_edges, A)
            old = sum(1 for p in paths if (birth[p] <= i).all())
            slack = 2 * k - 2 - z - old
            worst = slack if worst is None else min(worst, slack)
            if slack < -1e-9:
                violations += 1
            table.append({"step": n1, "i": i, "z": z, "old": old})
    rep.tables["old_skeleton_edge"] = table
    rep.add("old_skeleton_edge", 0, violations, violations == 0, f"min slack {worst}")
    return rep


def eulerian_subgraphs(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """All nonzero elements of the cycle space as rows, with their coordinates in a fundamental basis."""
    basis = fundamental_basis(g, spanning_forest(g)).matrix()
    r = basis.shape[0]
    coords = np.arange(1, 2**r, dtype=np.int64)
    rows = np.zeros((coords.size, g.m), dtype=bool)
    for j in range(r):
        rows[(coords >> j) & 1 == 1] ^= basis[j]
    return rows, coords


def brute_force_min_ply(g: Graph) -> tuple[int, GeneratingSet]:
    """Exact basis number and a witness basis, by exhaustive search (cycle rank at most 5)."""
    r = _cycle_dim(g)
    if r > BRUTE_FORCE_RANK_CAP:
        raise SizeError(f"brute force is capped at cycle rank {BRUTE_FORCE_RANK_CAP}, graph has {r}")
    out = GeneratingSet(g.m)
    if r == 0:
        return 0, out
    rows, coords = eulerian_subgraphs(g)
    order = np.argsort(rows.sum(axis=1), kind="stable")
    rows, coords = rows[order], coords[order]
    best, sel = _kernels.min_ply_search(rows.astype(np.uint8), coords, r)
    for j in sel:
        out.add(EdgeSubgraph(rows[j].copy()), "exact")
    return int(best), out


def exhaustive_generates(g: Graph, B) -> bool:
    """Does every Eulerian subgraph arise as the XOR of some subset of ``B``?  Exponential in ``|B|``."""
    target = {_as_int(r) for r in eulerian_subgraphs(g)[0]} if _cycle_dim(g) else set()
    reach = {0}
    for el in B:
        x = _as_int(np.asarray(el.bits))
        reach |= {y ^ x for y in reach}
    return target <= reach and all(_edge_count_parities(g, np.asarray(el.bits)) for el in B)


__all__ = [
    "AuditReport",
    "BRUTE_FORCE_RANK_CAP",
    "Check",
    "brute_force_min_ply",
    "old_skeleton_edge_audit",
    "forest_path_ply_audit",
    "eulerian_subgraphs",
    "exhaustive_generates",
    "skeleton_paths",
    "verify_generating",
    "verify_ply_bound",
]
