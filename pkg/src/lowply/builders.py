"""Constructions of low-ply generating sets of the cycle space.

* :func:`apex_forest_basis` -- ply-2 basis of a forest plus one apex vertex.
* :func:`build_pw4t` -- vertex-by-vertex construction along a normal path
  decomposition of width ``t``; ply at most ``4t``.
* :func:`build_adhesion` -- bag-by-bag construction along a decomposition with
  adhesions of size at most ``k`` and per-bag bases of ply at most ``b``.
* :func:`fh_generating_set` / :func:`maxply_generating_set` -- repeatedly take
  a shortest cycle and delete one of its edges (random, or of maximum ply).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .cycle_space import (
    GeneratingSet,
    PreconditionError,
    extract_basis,
    fundamental_basis,
    is_generating_set,
)
from .forest import Forest, lift_skeleton_cycles, skeleton, spanning_forest
from .graph import EdgeSubgraph, Graph, cycle_edge_mask, cycle_rank, cycle_space_dim
from .path_decomp import BagGraph, PathDecomposition, bag_graphs, birth_times, validate


@dataclass
class StepRecord:
    index: int
    bag: frozenset
    basis_size: int
    delta: tuple[int, int]
    delta_ply: int
    removed: list[tuple[int, int]]
    forest_edges: tuple[int, ...]
    forest_vertices: frozenset
    vertex: int | None = None
    lam: tuple[int, int] | None = None
    d_max: int = 0


@dataclass
class BuildTrace:
    """Per-step snapshots of a builder run.

    ``removed`` holds ``(edge id, criterion value)`` in deletion order: the ply
    at deletion time for the pathwidth builder, the birth time for the
    adhesion builder.  ``basis_size`` is the length of the generating-set
    prefix that existed after the step.
    """

    method: str
    steps: list[StepRecord] = field(default_factory=list)
    width: int | None = None
    k: int | None = None
    b: int | None = None
    bag_plies: list[int] = field(default_factory=list)
    degenerate: bool = False

    @property
    def d_max(self) -> int:
        return max((s.delta_ply for s in self.steps), default=0)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def apex_forest_basis(f_minus: Forest, v: int, nbrs: Iterable[int], tag: str = "apex") -> GeneratingSet:
    """Cycle basis of ``f_minus`` plus the edges ``v w`` (``w`` in ``nbrs``) with ply at most 2.

    In each tree, the neighbours are taken in depth-first preorder and
    consecutive ones are closed into a cycle through ``v``.  Consecutive
    preorder paths cover each tree edge at most twice.
    """
    g = f_minus.graph
    if v in f_minus.vertices:
        raise PreconditionError(f"apex {v} already belongs to the forest")
    nbrs = sorted(set(int(w) for w in nbrs))
    stray = [w for w in nbrs if w not in f_minus.vertices]
    if stray:
        raise PreconditionError(f"neighbours {stray} are not forest vertices")
    groups: dict[int, list[int]] = {}
    for w in nbrs:
        groups.setdefault(int(f_minus.root[w]), []).append(w)
    out = GeneratingSet(g.m)
    for root in sorted(groups):
        members = sorted(groups[root], key=lambda w: f_minus.preorder[w])
        for a, b in zip(members, members[1:]):
            ids = [g.edge_id(v, a), g.edge_id(v, b), *f_minus.path_edges(a, b)]
            out.add(EdgeSubgraph.from_edges(g.m, ids), tag)
    return out


def incremental_step(
    g: Graph, f_minus: Forest, b_minus: GeneratingSet, v: int, nbrs: Iterable[int] | None = None, check: bool = True
) -> GeneratingSet:
    """Extend a generating set of ``G - v`` to one of ``G`` by adding an apex basis.

    ``G - v`` is the subgraph of ``g`` induced on the forest's vertices and ``G``
    adds the edges from ``v`` to ``nbrs`` (default: all neighbours of ``v`` in
    the forest).
    """
    inner = g.induced_edges(f_minus.vertices)
    if nbrs is None:
        nbrs = [w for w in g.neighbors(v) if w in f_minus.vertices]
    nbrs = sorted(set(nbrs))
    if check and not is_generating_set(g, b_minus, inner):
        raise PreconditionError("B^- does not generate the cycle space of G - v")
    out = b_minus.copy()
    out.extend(apex_forest_basis(f_minus, v, nbrs))
    if check:
        outer = np.concatenate([inner, [g.edge_id(v, w) for w in nbrs]]).astype(np.int64)
        if not is_generating_set(g, out, outer):
            raise AssertionError("incremental step lost generation")
    return out


def _prune_to_forest(g: Graph, edges: set[int], key: Callable[[np.ndarray], np.ndarray]) -> list[tuple[int, int]]:
    """Delete cycle edges one at a time, each minimising ``key`` (ties: lowest id)."""
    removed = []
    while True:
        mask = cycle_edge_mask(g, edges)
        cand = np.flatnonzero(mask)
        if cand.size == 0:
            return removed
        scores = key(cand)
        j = int(np.argmin(scores))
        e = int(cand[j])
        edges.discard(e)
        removed.append((e, int(scores[j])))


def build_pw4t(g: Graph, d: PathDecomposition) -> tuple[GeneratingSet, Forest, BuildTrace]:
    """Generating set of ply at most ``4t`` from a normal decomposition of width ``t``.

    Each step adds the new vertex as an apex over the current forest, then
    deletes cycle edges of largest current ply until a forest remains.
    """
    check = validate(g, d)
    if not check:
        raise PreconditionError(f"invalid decomposition: {check.reason}")
    if not d.is_normal:
        raise PreconditionError("build_pw4t needs a normal path decomposition")
    covered = set().union(*d.bags) if len(d) else set()
    if len(covered) != g.n:
        raise PreconditionError("decomposition does not cover every vertex")
    t = d.width
    trace = BuildTrace("pw4t", width=t)
    B = GeneratingSet(g.m)
    F = Forest(g, (), vertices=())
    for i in range(1, len(d)):
        (v,) = d[i] - d[i - 1]
        nbrs = [w for w in g.neighbors(v) if w in d[i - 1]]
        start = len(B)
        delta = apex_forest_basis(F, v, nbrs, tag=f"pw4t:step{i}")
        B.extend(delta)
        edges = set(F.edge_ids) | {g.edge_id(v, w) for w in nbrs}
        verts = F.vertices | {v}
        ply = B.ply_counts
        removed = _prune_to_forest(g, edges, lambda cand: -ply[cand])
        removed = [(e, -s) for e, s in removed]
        F = Forest(g, edges, verts)
        trace.steps.append(
            StepRecord(
                index=i,
                bag=d[i],
                basis_size=len(B),
                delta=(start, len(B)),
                delta_ply=delta.ply,
                removed=removed,
                forest_edges=F.edge_ids,
                forest_vertices=F.vertices,
                vertex=v,
            )
        )
    return B, F, trace


class Bundle(NamedTuple):
    """A subgraph (by edge ids) with a spanning forest and a generating set."""

    edge_ids: tuple
    forest: Forest
    basis: GeneratingSet


def merge_bases(g: Graph, h1: Bundle, h2: Bundle, delta: GeneratingSet, check: bool = True) -> GeneratingSet:
    """``B_1 + B_2 + Delta`` generates the cycle space of ``H_1 | H_2``.

    ``delta`` must generate the cycle space of the union of the two forests.
    """
    if check:
        union_forest = sorted(set(h1.forest.edge_ids) | set(h2.forest.edge_ids))
        if not is_generating_set(g, delta, union_forest):
            raise PreconditionError("delta does not generate the cycle space of F_1 | F_2")
    out = h1.basis.copy()
    out.extend(h2.basis)
    out.extend(delta)
    if check:
        union = sorted(set(h1.edge_ids) | set(h2.edge_ids))
        if not is_generating_set(g, out, union):
            raise AssertionError("merged set does not generate H_1 | H_2")
    return out


def _skeleton_graph(sk):
    """Simple graph on a skeleton union; a parallel copy gets a subdivision vertex.

    Returns ``(graph, edge_to_skeleton)`` with -1 for the unlabelled half of a
    subdivided edge.
    """
    local = {v: j for j, v in enumerate(sk.vertices)}
    n = len(local)
    edges, labels = [], []
    seen = set()
    for j, (u, w) in enumerate(sk.ends):
        a, b = local[u], local[w]
        key = (min(a, b), max(a, b))
        if key in seen:
            x = n
            n += 1
            edges += [(a, x), (x, b)]
            labels += [j, -1]
        else:
            seen.add(key)
            edges.append((a, b))
            labels.append(j)
    return Graph(n, edges), np.asarray(labels, dtype=np.int64)


def two_trees_basis(t1: Forest, t2: Forest, k: int | None = None, seed=0) -> tuple[GeneratingSet, int]:
    """Generating set of the cycle space of ``t1 | t2`` built on the shared-vertex skeleton.

    Both forests are reduced to their skeletons on the shared vertex set ``A``;
    the shortest-cycle builder runs on the union (at most ``4|A| - 4``
    vertices) and its cycles are expanded back.  Returns ``(delta, ply)``.
    """
    g = t1.graph
    A = t1.vertices & t2.vertices
    if k is not None and len(A) > k:
        raise PreconditionError(f"{len(A)} shared vertices exceeds k={k}")
    own2 = set(t2.edge_ids) - set(t1.edge_ids)
    if len(own2) != len(t2.edge_ids):
        t2 = Forest(g, own2, t2.vertices)
    union = sorted(set(t1.edge_ids) | own2)
    if len(A) <= 1 or cycle_space_dim(g, union) == 0:
        return GeneratingSet(g.m), 0
    sk = skeleton(t1, A).union(skeleton(t2, A))
    small, labels = _skeleton_graph(sk)
    local = fh_generating_set(small, seed=seed, verify=False)
    if not is_generating_set(small, local):
        local = fundamental_basis(small, spanning_forest(small))
    cycles = [[int(labels[e]) for e in el.edge_ids if labels[e] >= 0] for el in local]
    lifted = lift_skeleton_cycles(sk, cycles, tag="two-trees")
    delta = extract_basis(g, lifted, union)
    return delta, delta.ply


def _peel_shortest_cycles(g: Graph, choose, tag: str) -> GeneratingSet:
    B = GeneratingSet(g.m)
    indptr, nbr, eid = g.csr()
    alive = np.ones(g.m, dtype=np.bool_)
    for step in range(cycle_rank(g)):
        cyc = _kernels.shortest_cycle(indptr, nbr, eid, alive)
        if cyc.size == 0:
            raise AssertionError("residual graph became acyclic early")
        B.add(EdgeSubgraph.from_edges(g.m, cyc), f"{tag}:{step}")
        alive[choose(cyc, B)] = False
    return B


def fh_generating_set(g: Graph, seed=None, verify: bool = True) -> GeneratingSet:
    """Take a shortest cycle, delete a uniformly random edge of it, repeat until acyclic.

    The collected cycles form a basis: each deleted edge lies only on its own
    cycle among those taken afterwards.
    """
    rng = _rng(seed)
    B = _peel_shortest_cycles(g, lambda cyc, B: cyc[rng.integers(cyc.size)], "fh")
    if verify and not is_generating_set(g, B):
        raise AssertionError("shortest-cycle peeling did not generate the cycle space")
    return B


def maxply_generating_set(g: Graph, mode: str = "deterministic", seed=None, verify: bool = True) -> GeneratingSet:
    """Like :func:`fh_generating_set`, but delete the cycle edge of largest ply.

    ``mode="randomized"`` samples the edge with probability proportional to
    its current ply instead of taking the maximum (ties: lowest id).
    """
    if mode == "deterministic":
        def choose(cyc, B):
            return cyc[int(np.argmax(B.ply_counts[cyc]))]
    elif mode == "randomized":
        rng = _rng(seed)

        def choose(cyc, B):
            w = B.ply_counts[cyc].astype(float)
            return cyc[rng.choice(cyc.size, p=w / w.sum())]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    B = _peel_shortest_cycles(g, choose, f"maxply-{mode[:3]}")
    if verify and not is_generating_set(g, B):
        raise AssertionError("shortest-cycle peeling did not generate the cycle space")
    return B


BagProvider = Callable[[Graph, BagGraph], GeneratingSet]


def make_provider(name: str, seed: int = 0) -> BagProvider:
    """Per-bag generating-set sources for :func:`build_adhesion`.

    ``fundamental``, ``fh``, ``maxply`` (deterministic), ``exact`` (brute-force
    minimum ply, cycle rank at most 5) or ``auto`` (``exact`` when feasible,
    else ``maxply``).
    """
    from .verification import BRUTE_FORCE_RANK_CAP, brute_force_min_ply

    def local_basis(lg: Graph) -> GeneratingSet:
        if name == "fundamental":
            return fundamental_basis(lg, spanning_forest(lg))
        if name == "fh":
            return fh_generating_set(lg, seed=seed)
        if name == "maxply":
            return maxply_generating_set(lg)
        if name == "exact" or (name == "auto" and cycle_rank(lg) <= BRUTE_FORCE_RANK_CAP):
            return brute_force_min_ply(lg)[1]
        if name == "auto":
            return maxply_generating_set(lg)
        raise ValueError(f"unknown bag-basis method {name!r}")

    def provider(g: Graph, bag: BagGraph) -> GeneratingSet:
        lg, _, emap = g.local_copy(bag.edge_ids, bag.vertices)
        out = local_basis(lg).lift(g.m, emap)
        out.provenance = [f"bag{bag.index}:{name}"] * len(out)
        return out

    return provider


def build_adhesion(
    g: Graph,
    d: PathDecomposition,
    provider: BagProvider,
    k: int | None = None,
    b: int | None = None,
    seed: int = 0,
    check_steps: bool = False,
) -> tuple[GeneratingSet, Forest, BuildTrace]:
    """Generating set along a decomposition with small adhesions.

    With adhesions of size at most 1 the per-bag bases are simply collected.
    Otherwise bags are merged one at a time: the new bag's basis, plus a basis
    of the current forest joined with a spanning forest of the new bag graph;
    cycle edges of earliest birth time are then deleted until a forest
    remains.  ``k`` and ``b`` default to the observed maxima.
    """
    check = validate(g, d)
    if not check:
        raise PreconditionError(f"invalid decomposition: {check.reason}")
    if len(d) == 0:
        raise PreconditionError("decomposition has no bags")
    observed_k = d.max_adhesion()
    if k is not None and observed_k > k:
        raise PreconditionError(f"adhesion of size {observed_k} exceeds k={k}")
    H = bag_graphs(g, d)
    lambdas = []
    for bag in H:
        lam = provider(g, bag)
        if not is_generating_set(g, lam, bag.edge_ids):
            raise PreconditionError(f"bag basis {bag.index} does not generate the cycle space of its bag graph")
        if b is not None and lam.ply > b:
            raise PreconditionError(f"bag basis {bag.index} has ply {lam.ply} > b={b}")
        lambdas.append(lam)
    bag_plies = [lam.ply for lam in lambdas]
    b = max(bag_plies) if b is None else b
    k = observed_k if k is None else k
    trace = BuildTrace("adhesion", k=k, b=b, bag_plies=bag_plies)

    if observed_k <= 1:
        trace.degenerate = True
        B = GeneratingSet(g.m)
        for lam in lambdas:
            B.extend(lam)
        return B, spanning_forest(g), trace

    birth = birth_times(g, d)
    rng = np.random.default_rng(seed)
    B = lambdas[0].copy()
    F = spanning_forest(g, H[0].edge_ids, H[0].vertices)
    prefix_edges = set(H[0].edge_ids)
    trace.steps.append(
        StepRecord(0, d[0], len(B), (0, 0), 0, [], F.edge_ids, F.vertices, lam=(0, len(B)))
    )
    d_max = 0
    for i in range(1, len(d)):
        bag = H[i]
        Fn = spanning_forest(g, bag.edge_ids, bag.vertices)
        lam_start = len(B)
        delta, d_step = two_trees_basis(F, Fn, seed=int(rng.integers(2**32)))
        d_max = max(d_max, d_step)
        if check_steps:
            B = merge_bases(
                g,
                Bundle(tuple(sorted(prefix_edges)), F, B),
                Bundle(bag.edge_ids, Fn, lambdas[i]),
                delta,
            )
        else:
            B.extend(lambdas[i])
            B.extend(delta)
        delta_start = lam_start + len(lambdas[i])
        for j in range(delta_start, len(B)):
            B.provenance[j] = f"adhesion:step{i}"
        prefix_edges.update(bag.edge_ids)
        edges = set(F.edge_ids) | set(Fn.edge_ids)
        verts = F.vertices | Fn.vertices
        removed = _prune_to_forest(g, edges, lambda cand: birth[cand])
        F = Forest(g, edges, verts)
        trace.steps.append(
            StepRecord(
                index=i,
                bag=d[i],
                basis_size=len(B),
                delta=(delta_start, len(B)),
                delta_ply=d_step,
                removed=removed,
                forest_edges=F.edge_ids,
                forest_vertices=F.vertices,
                lam=(lam_start, delta_start),
                d_max=d_max,
            )
        )
    return B, F, trace


def fundamental_generating_set(g: Graph) -> GeneratingSet:
    return fundamental_basis(g, spanning_forest(g))


__all__ = [
    "BuildTrace",
    "Bundle",
    "StepRecord",
    "apex_forest_basis",
    "build_adhesion",
    "build_pw4t",
    "fh_generating_set",
    "fundamental_generating_set",
    "incremental_step",
    "make_provider",
    "maxply_generating_set",
    "merge_bases",
    "two_trees_basis",
]
