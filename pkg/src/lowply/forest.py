"""Forests inside a host graph: path queries, Steiner subforests, skeletons."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .cycle_space import GeneratingSet
from .graph import DisjointSets, EdgeSubgraph, Graph


class Disconnected(ValueError):
    """Two vertices lie in different trees of the forest."""


class Forest:
    """An acyclic set of edges of ``graph`` on a vertex set.

    Each tree is rooted at its smallest vertex and explored depth-first with
    children in increasing vertex order; ``preorder`` records first visits.
    """

    def __init__(self, graph: Graph, edge_ids: Iterable[int], vertices: Iterable[int] | None = None):
        self.graph = graph
        self.edge_ids: tuple[int, ...] = tuple(sorted({int(e) for e in edge_ids}))
        verts = set(range(graph.n)) if vertices is None else {int(v) for v in vertices}
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
        for e in self.edge_ids:
            u, v = graph.edges[e]
            if u not in adj or v not in adj:
                raise ValueError(f"forest edge {e} leaves the vertex set")
            adj[u].append((v, e))
            adj[v].append((u, e))
        for row in adj.values():
            row.sort()
        self.vertices: frozenset[int] = frozenset(verts)
        self._adj = adj

        n = graph.n
        self.parent = np.full(n, -1, dtype=np.int64)
        self.parent_edge = np.full(n, -1, dtype=np.int64)
        self.depth = np.full(n, -1, dtype=np.int64)
        self.root = np.full(n, -1, dtype=np.int64)
        self.preorder = np.full(n, -1, dtype=np.int64)
        counter = 0
        for r in sorted(verts):
            if self.root[r] >= 0:
                continue
            self.root[r] = r
            self.depth[r] = 0
            stack = [r]
            while stack:
                u = stack.pop()
                self.preorder[u] = counter
                counter += 1
                for w, e in reversed(adj[u]):
                    if e == self.parent_edge[u]:
                        continue
                    if self.root[w] >= 0:
                        raise ValueError("edge set contains a cycle")
                    self.root[w] = r
                    self.parent[w] = u
                    self.parent_edge[w] = e
                    self.depth[w] = self.depth[u] + 1
                    stack.append(w)

    def __repr__(self):
        return f"Forest(|V|={len(self.vertices)}, |E|={len(self.edge_ids)})"

    @property
    def m(self) -> int:
        return self.graph.m

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """``(neighbour, edge id)`` pairs of ``v`` inside the forest."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def component_count(self) -> int:
        return len(self.vertices) - len(self.edge_ids)

    def same_tree(self, v: int, w: int) -> bool:
        return self.root[v] >= 0 and self.root[v] == self.root[w]

    def path_edges(self, v: int, w: int) -> list[int]:
        """Edge ids of the unique ``v``-``w`` path, in order from ``v``."""
        if v not in self.vertices or w not in self.vertices:
            raise KeyError(f"vertex {v if v not in self.vertices else w} not in forest")
        if not self.same_tree(v, w):
            raise Disconnected(f"{v} and {w} are in different trees")
        head, tail = [], []
        a, b = v, w
        while self.depth[a] > self.depth[b]:
            head.append(int(self.parent_edge[a]))
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            tail.append(int(self.parent_edge[b]))
            b = self.parent[b]
        while a != b:
            head.append(int(self.parent_edge[a]))
            tail.append(int(self.parent_edge[b]))
            a, b = self.parent[a], self.parent[b]
        return head + tail[::-1]

    def edge_mask(self) -> np.ndarray:
        mask = np.zeros(self.graph.m, dtype=bool)
        mask[list(self.edge_ids)] = True
        return mask


def spanning_forest(g: Graph, edge_ids: Iterable[int] | None = None, vertices: Iterable[int] | None = None) -> Forest:
    """Greedy spanning forest taking edges in id order.

    Spans the subgraph on ``edge_ids`` (default: all edges) with vertex set
    ``vertices`` (default: all vertices).
    """
    ids = range(g.m) if edge_ids is None else sorted(int(e) for e in edge_ids)
    dsu = DisjointSets(g.n)
    kept = [e for e in ids if dsu.union(*g.edges[e])]
    verts = None if vertices is None else set(vertices)
    if verts is not None:
        for e in kept:
            verts.update(g.edges[e])
    return Forest(g, kept, verts)


def forest_path(f: Forest, v: int, w: int) -> EdgeSubgraph:
    """The unique ``v``-``w`` path of ``f``; empty when ``v == w``."""
    return EdgeSubgraph.from_edges(f.m, f.path_edges(v, w))


def steiner_subforest(f: Forest, S: Iterable[int]) -> Forest:
    """Smallest subforest keeping every pair of ``S`` as connected as in ``f``."""
    S = set(S)
    missing = S - f.vertices
    if missing:
        raise KeyError(f"vertices {sorted(missing)} not in forest")
    deg = {v: f.degree(v) for v in f.vertices}
    alive_edges = set(f.edge_ids)
    alive = set(f.vertices)
    queue = [v for v in sorted(f.vertices) if deg[v] <= 1 and v not in S]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w, e in f.neighbors(v):
            if e in alive_edges:
                alive_edges.discard(e)
                deg[w] -= 1
                if deg[w] <= 1 and w not in S and w in alive:
                    queue.append(w)
    return Forest(f.graph, alive_edges, alive)


@dataclass(frozen=True)
class Skeleton:
    """A forest with degree-2 non-terminal vertices suppressed.

    Skeleton edge ``j`` joins ``ends[j]`` and stands for the forest path
    ``paths[j]`` (host edge ids).  Paths of distinct skeleton edges are
    edge-disjoint.  Unions of skeletons may carry parallel edges.
    """

    m: int
    terminals: frozenset
    vertices: tuple
    ends: tuple
    paths: tuple

    def __len__(self):
        return len(self.ends)

    def expansion(self, j: int) -> EdgeSubgraph:
        return EdgeSubgraph.from_edges(self.m, self.paths[j])

    def union(self, other: Skeleton) -> Skeleton:
        if other.m != self.m:
            raise ValueError("skeletons over different host graphs")
        return Skeleton(
            self.m,
            self.terminals | other.terminals,
            tuple(sorted(set(self.vertices) | set(other.vertices))),
            self.ends + other.ends,
            self.paths + other.paths,
        )


def skeleton(f: Forest, S: Iterable[int]) -> Skeleton:
    """Suppress the non-terminal degree-2 vertices of the Steiner subforest on ``S``."""
    S = frozenset(S)
    sub = steiner_subforest(f, S)
    kept = sorted(v for v in sub.vertices if v in S or sub.degree(v) != 2)
    kept_set = set(kept)
    used = set()
    ends, paths = [], []
    for u in kept:
        for w, e in sub.neighbors(u):
            if e in used:
                continue
            path = [e]
            used.add(e)
            prev, cur = u, w
            while cur not in kept_set:
                (a, ea), (b, eb) = sub.neighbors(cur)
                nxt, ne = (b, eb) if ea == path[-1] else (a, ea)
                path.append(ne)
                used.add(ne)
                prev, cur = cur, nxt
            ends.append((u, cur))
            paths.append(tuple(path))
    return Skeleton(f.m, S, tuple(kept), tuple(ends), tuple(paths))


def _ply_array(B) -> np.ndarray:
    if isinstance(B, GeneratingSet):
        return B.ply_counts
    return np.asarray(B)


def ply_along(f: Forest, v: int, w: int, B) -> int:
    """Largest ply (in ``B``, or a per-edge count array) on the ``v``-``w`` path of ``f``.

    Zero for the empty path.
    """
    path = f.path_edges(v, w)
    if not path:
        return 0
    return int(_ply_array(B)[path].max())


def lift_skeleton_cycles(sk: Skeleton, cycles: Iterable[Iterable[int]], tag: str = "lift") -> GeneratingSet:
    """Replace each skeleton edge of each cycle by its forest path.

    ``cycles`` lists skeleton-edge indices per cycle.  Because expansion paths
    are edge-disjoint, host-edge ply equals skeleton-edge ply.
    """
    out = GeneratingSet(sk.m)
    for cyc in cycles:
        bits = np.zeros(sk.m, dtype=bool)
        for j in cyc:
            bits[list(sk.paths[j])] ^= True
        out.add(EdgeSubgraph(bits), tag)
    return out
