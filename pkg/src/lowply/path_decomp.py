"""Path decompositions: validation, normal form, bag graphs, exact pathwidth."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cycle_space import PreconditionError
from .graph import Graph

DEFAULT_PW_CAP = 18


class SizeError(ValueError):
    """Instance too large for an exact exponential-time routine."""


class PathDecomposition:
    """Bags ``B_0..B_n`` of a path decomposition."""

    __slots__ = ("bags",)

    def __init__(self, bags: Iterable[Iterable[int]]):
        self.bags: tuple[frozenset[int], ...] = tuple(frozenset(int(v) for v in b) for b in bags)

    def __len__(self):
        return len(self.bags)

    def __iter__(self):
        return iter(self.bags)

    def __getitem__(self, i):
        return self.bags[i]

    def __eq__(self, other):
        return isinstance(other, PathDecomposition) and self.bags == other.bags

    def __hash__(self):
        return hash(self.bags)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.bags)
        return f"PathDecomposition([{inner}])"

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def is_normal(self) -> bool:
        """Sizes ``min(i, t+1)`` and exactly one new vertex per bag after the first."""
        t = self.width
        for i, b in enumerate(self.bags):
            if len(b) != min(i, t + 1):
                return False
            if i and len(b - self.bags[i - 1]) != 1:
                return False
        return True

    def adhesions(self) -> list[frozenset[int]]:
        return adhesions(self)

    def max_adhesion(self) -> int:
        return max((len(a) for a in adhesions(self)), default=0)


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""
    vertex: int | None = None
    edge: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def validate(g: Graph, d: PathDecomposition) -> Validation:
    """Check the contiguity and edge-coverage conditions; report the first failure."""
    for i, b in enumerate(d.bags):
        bad = [v for v in b if not 0 <= v < g.n]
        if bad:
            return Validation(False, f"bag {i} holds vertex {bad[0]} outside the graph", vertex=bad[0])
    first, last = {}, {}
    for i, b in enumerate(d.bags):
        for v in b:
            first.setdefault(v, i)
            last[v] = i
    for v in sorted(first):
        for j in range(first[v], last[v] + 1):
            if v not in d.bags[j]:
                return Validation(False, f"bags holding vertex {v} are not contiguous (missing from bag {j})", vertex=v)
    for u, v in g.edges:
        if u not in first or v not in first:
            return Validation(False, f"edge ({u}, {v}) is not covered by any bag", edge=(u, v))
        lo, hi = max(first[u], first[v]), min(last[u], last[v])
        if lo > hi:
            return Validation(False, f"edge ({u}, {v}) is not covered by any bag", edge=(u, v))
    return Validation(True)


def adhesions(d: PathDecomposition) -> list[frozenset[int]]:
    """``A_i = B_i & B_{i+1}`` for consecutive bags."""
    return [d.bags[i] & d.bags[i + 1] for i in range(len(d.bags) - 1)]


def _layout_from(d: PathDecomposition, n: int) -> list[int]:
    # vertices by first bag, ties by label; vertices in no bag go last
    first = {}
    for i, b in enumerate(d.bags):
        for v in b:
            first.setdefault(v, i)
    seen = sorted(first, key=lambda v: (first[v], v))
    rest = [v for v in range(n) if v not in first]
    return seen + rest


def normalize(g: Graph, d: PathDecomposition) -> PathDecomposition:
    """Normal decomposition of the same width (``|V(g)| + 1`` bags, ``B_0`` empty).

    Vertices are introduced in order of first appearance in ``d``.  A bag that
    would overflow drops a vertex with no neighbour still to come, preferring
    the one whose last bag in ``d`` is earliest.
    """
    check = validate(g, d)
    if not check:
        raise PreconditionError(f"normalize needs a valid decomposition: {check.reason}")
    t = max(d.width, 0)
    order = _layout_from(d, g.n)
    pos = {v: i for i, v in enumerate(order)}
    last_neighbor = [max((pos[w] for w in g.neighbors(v)), default=-1) for v in range(g.n)]
    last_bag = {}
    for i, b in enumerate(d.bags):
        for v in b:
            last_bag[v] = i
    bags = [frozenset()]
    current: set[int] = set()
    for i, v in enumerate(order):
        current.add(v)
        if len(current) > t + 1:
            # droppable: no neighbour at a later layout position
            candidates = [u for u in current if u != v and last_neighbor[u] < i]
            if not candidates:
                raise PreconditionError("decomposition width is inconsistent with its vertex order")
            drop = min(candidates, key=lambda u: (last_bag.get(u, len(d.bags)), pos[u]))
            current.discard(drop)
        bags.append(frozenset(current))
    return PathDecomposition(bags)


def decomposition_from_layout(g: Graph, order: Sequence[int]) -> PathDecomposition:
    """Bag ``i`` holds the ``i``-th vertex plus earlier vertices with a neighbour at or after it."""
    pos = {v: i for i, v in enumerate(order)}
    last_neighbor = [max((pos[w] for w in g.neighbors(v)), default=-1) for v in range(g.n)]
    bags = []
    for i, v in enumerate(order):
        bags.append(frozenset([v, *(u for u in order[:i] if last_neighbor[u] >= i)]))
    return PathDecomposition(bags)


def exact_pathwidth(g: Graph, cap: int = DEFAULT_PW_CAP) -> tuple[int, PathDecomposition]:
    """Exact pathwidth via the vertex-separation subset DP, with a witness decomposition.

    Exponential in ``|V(g)|``; refuses graphs with more than ``cap`` vertices.
    The empty graph gets width 0 and a single empty bag.
    """
    n = g.n
    if n > cap:
        raise SizeError(f"exact pathwidth is capped at {cap} vertices, graph has {n}")
    if n == 0:
        return 0, PathDecomposition([()])
    masks = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for w in g.neighbors(v):
            masks[v] |= 1 << w
    f, last = _kernels.vertex_separation_table(masks)
    S = (1 << n) - 1
    rev = []
    while S:
        v = int(last[S])
        rev.append(v)
        S ^= 1 << v
    order = rev[::-1]
    d = decomposition_from_layout(g, order)
    t = int(f[(1 << n) - 1])
    assert d.width == t, (d.width, t)
    return t, d


@dataclass(frozen=True)
class BagGraph:
    """``H_i``: the bag's vertices and the edges first covered at bag ``i``."""

    index: int
    vertices: frozenset
    edge_ids: tuple


def bag_graphs(g: Graph, d: PathDecomposition) -> list[BagGraph]:
    """``H_0 = G[B_0]`` and ``H_i = G[B_i] - E(G[B_{i-1} & B_i])``."""
    out = []
    prev: frozenset[int] = frozenset()
    for i, b in enumerate(d.bags):
        inside = g.induced_edges(b)
        if i:
            shared = set(g.induced_edges(prev & b).tolist())
            inside = [e for e in inside if e not in shared]
        out.append(BagGraph(i, b, tuple(int(e) for e in inside)))
        prev = b
    return out


def birth_times(g: Graph, d: PathDecomposition) -> np.ndarray:
    """Index of the first bag covering each edge."""
    birth = np.full(g.m, -1, dtype=np.int64)
    for i, b in enumerate(d.bags):
        ids = g.induced_edges(b)
        fresh = ids[birth[ids] < 0]
        birth[fresh] = i
    return birth
