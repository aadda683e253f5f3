"""Simple undirected graphs with stable edge indices, and edge-set vectors.

Vertices are the integers ``0..n-1``.  Edges are numbered in the order they
were given; every edge-set vector in the package is indexed by these numbers.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Malformed graph input (self-loop, parallel edge, bad vertex)."""


class Graph:
    """A finite simple undirected graph.

    >>> g = Graph(3, [(0, 1), (1, 2), (2, 0)])
    >>> g.m, g.edge_id(0, 2)
    (3, 2)
    """

    __slots__ = ("n", "edges", "_index", "_adj", "_csr", "_ends")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        self.n = int(n)
        normalized = []
        index = {}
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphError(f"parallel edge {key}")
            index[key] = len(normalized)
            normalized.append(key)
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        self._index = index
        adj = [[] for _ in range(n)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((v, e))
            adj[v].append((u, e))
        for row in adj:
            row.sort()
        self._adj = tuple(tuple(row) for row in adj)
        self._csr = None
        self._ends = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"no edge {key}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self._adj[v]]

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(neighbour, edge id)`` pairs at ``v``, sorted by neighbour."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def endpoints(self) -> np.ndarray:
        """(m, 2) int64 array of edge endpoints."""
        if self._ends is None:
            ends = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
            ends.setflags(write=False)
            self._ends = ends
        return self._ends

    def csr(self):
        """``(indptr, neighbour, edge_id)`` arrays for the compiled kernels."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self._adj[v])
            nbr = np.fromiter((w for row in self._adj for w, _ in row), dtype=np.int64, count=indptr[-1])
            eid = np.fromiter((e for row in self._adj for _, e in row), dtype=np.int64, count=indptr[-1])
            self._csr = (indptr, nbr, eid)
        return self._csr

    def induced_edges(self, vertices: Iterable[int]) -> np.ndarray:
        """Ids of edges with both ends in ``vertices``, ascending."""
        inside = np.zeros(self.n, dtype=bool)
        inside[list(vertices)] = True
        ends = self.endpoints
        return np.flatnonzero(inside[ends[:, 0]] & inside[ends[:, 1]])

    def local_copy(self, edge_ids: Sequence[int], vertices: Iterable[int] | None = None):
        """Relabel a subgraph onto dense vertices.

        Returns ``(local_graph, vertex_order, edge_ids)``: local vertex ``j`` is
        ``vertex_order[j]`` and local edge ``j`` is parent edge ``edge_ids[j]``.
        """
        edge_ids = np.asarray(sorted(int(e) for e in edge_ids), dtype=np.int64)
        verts = set(vertices) if vertices is not None else set()
        for e in edge_ids:
            verts.update(self.edges[e])
        order = sorted(verts)
        local = {v: j for j, v in enumerate(order)}
        g = Graph(len(order), [(local[self.edges[e][0]], local[self.edges[e][1]]) for e in edge_ids])
        return g, order, edge_ids


class EdgeSubgraph:
    """A set of edges of a parent graph, viewed as a GF(2) vector.

    The vertex set is implicit: the endpoints of the chosen edges.
    """

    __slots__ = ("bits",)

    def __init__(self, bits):
        bits = np.array(bits, dtype=bool, copy=True).reshape(-1)
        bits.setflags(write=False)
        self.bits = bits

    @classmethod
    def empty(cls, m: int) -> EdgeSubgraph:
        return cls(np.zeros(m, dtype=bool))

    @classmethod
    def from_edges(cls, m: int, edge_ids: Iterable[int]) -> EdgeSubgraph:
        bits = np.zeros(m, dtype=bool)
        ids = np.fromiter((int(e) for e in edge_ids), dtype=np.int64)
        if ids.size and (ids.min() < 0 or ids.max() >= m):
            raise IndexError(f"edge id outside 0..{m - 1}")
        bits[ids] = True
        return cls(bits)

    @property
    def m(self) -> int:
        return self.bits.shape[0]

    @property
    def edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __len__(self):
        return int(self.bits.sum())

    def __bool__(self):
        return bool(self.bits.any())

    def __contains__(self, e):
        return bool(self.bits[e])

    def __xor__(self, other):
        return symmetric_difference(self, other)

    def __or__(self, other):
        _same_parent(self, other)
        return EdgeSubgraph(self.bits | other.bits)

    def __eq__(self, other):
        return isinstance(other, EdgeSubgraph) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.m, np.packbits(self.bits).tobytes()))

    def __repr__(self):
        return f"EdgeSubgraph({self.edge_ids.tolist()}, m={self.m})"

    def degrees(self, g: Graph) -> np.ndarray:
        ends = g.endpoints[self.bits]
        return np.bincount(ends.reshape(-1), minlength=g.n)

    def vertices(self, g: Graph) -> np.ndarray:
        return np.unique(g.endpoints[self.bits])


def _same_parent(a: EdgeSubgraph, b: EdgeSubgraph):
    if a.m != b.m:
        raise ValueError(f"edge vectors over different graphs ({a.m} vs {b.m} edges)")


def symmetric_difference(a: EdgeSubgraph, b: EdgeSubgraph) -> EdgeSubgraph:
    _same_parent(a, b)
    return EdgeSubgraph(a.bits ^ b.bits)


def is_eulerian(g: Graph, h: EdgeSubgraph) -> bool:
    """True iff every vertex has even degree in ``h``."""
    return not (h.degrees(g) & 1).any()


def is_cycle(g: Graph, h: EdgeSubgraph) -> bool:
    """True iff ``h`` is a single simple cycle (connected, all degrees 2)."""
    if not h:
        return False
    deg = h.degrees(g)
    if not np.all((deg == 0) | (deg == 2)):
        return False
    ids = h.edge_ids
    dsu = DisjointSets(g.n)
    for e in ids:
        dsu.union(*g.edges[e])
    roots = {dsu.find(v) for v in np.flatnonzero(deg)}
    return len(roots) == 1


def veblen_decompose(g: Graph, h: EdgeSubgraph) -> list[EdgeSubgraph]:
    """Split an Eulerian subgraph into pairwise edge-disjoint simple cycles.

    Walks unused edges from the lowest vertex of positive remaining degree and
    splices off a cycle whenever the walk revisits a vertex.
    """
    if h.m != g.m:
        raise ValueError("subgraph is over a different graph")
    if not is_eulerian(g, h):
        raise ValueError("veblen_decompose needs an Eulerian subgraph")
    used = ~h.bits.copy()
    ptr = [0] * g.n
    cycles = []

    def next_edge(u):
        row = g.incident(u)
        while ptr[u] < len(row):
            w, e = row[ptr[u]]
            if not used[e]:
                return w, e
            ptr[u] += 1
        return None

    for start in range(g.n):
        while next_edge(start) is not None:
            walk = [start]
            walk_edges = []
            pos = {start: 0}
            u = start
            while True:
                w, e = next_edge(u)
                used[e] = True
                walk_edges.append(e)
                if w in pos:
                    cut = pos[w]
                    cycles.append(EdgeSubgraph.from_edges(g.m, walk_edges[cut:]))
                    for x in walk[cut + 1 :]:
                        del pos[x]
                    del walk[cut + 1 :]
                    del walk_edges[cut:]
                    u = w
                    if not walk_edges:
                        break
                else:
                    pos[w] = len(walk)
                    walk.append(w)
                    u = w
    return cycles


class DisjointSets:
    """Union-find with path halving and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def components(g: Graph, edge_ids: Iterable[int] | None = None) -> np.ndarray:
    """Component label per vertex: the smallest vertex of its component.

    With ``edge_ids`` the labelling is of the spanning subgraph on those edges.
    """
    dsu = DisjointSets(g.n)
    ids = range(g.m) if edge_ids is None else edge_ids
    for e in ids:
        dsu.union(*g.edges[e])
    roots = np.array([dsu.find(v) for v in range(g.n)], dtype=np.int64)
    first = {}
    for v, r in enumerate(roots):
        first.setdefault(int(r), v)
    return np.array([first[int(r)] for r in roots], dtype=np.int64)


def cycle_space_dim(g: Graph, edge_ids: Iterable[int] | None = None) -> int:
    """|E| - |V| + #components of the spanning subgraph on ``edge_ids``.

    Isolated vertices contribute nothing, so the vertex set is irrelevant.
    """
    ids = list(range(g.m)) if edge_ids is None else [int(e) for e in edge_ids]
    dsu = DisjointSets(g.n)
    merged = 0
    for e in ids:
        if dsu.union(*g.edges[e]):
            merged += 1
    # |V| - #components == number of successful unions
    return len(ids) - merged


def cycle_rank(g: Graph) -> int:
    """Dimension of the cycle space: |E| - |V| + #components."""
    return cycle_space_dim(g)


def cycle_edge_mask(g: Graph, edge_ids: Iterable[int]) -> np.ndarray:
    """Boolean mask over all edges: True for the given edges lying on a cycle.

    An edge lies on a cycle of the subgraph iff it is not a bridge there.
    """
    ids = [int(e) for e in edge_ids]
    mask = np.zeros(g.m, dtype=bool)
    if not ids:
        return mask
    adj = {}
    for e in ids:
        u, v = g.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    disc = {}
    low = {}
    bridge = set()
    timer = 0
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, via, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == via:
                    continue
                if w in disc:
                    low[u] = min(low[u], disc[w])
                else:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        bridge.add(via)
    for e in ids:
        if e not in bridge:
            mask[e] = True
    return mask
