"""Linear algebra over GF(2) on edge vectors: rank, generation, ply."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from . import _kernels
from .graph import EdgeSubgraph, Graph, cycle_space_dim, is_eulerian


class InvalidInput(ValueError):
    """An element is not a member of the cycle space it is claimed to be in."""


class PreconditionError(ValueError):
    """An operation was called on inputs that violate its stated precondition."""


class GeneratingSet:
    """Ordered Eulerian subgraphs with a maintained per-edge ply count.

    Duplicates are allowed.  Every element carries a provenance tag naming the
    construction step that produced it.
    """

    def __init__(self, m: int, elements: Iterable[EdgeSubgraph] = (), tag: str = ""):
        self.m = int(m)
        self.elements: list[EdgeSubgraph] = []
        self.provenance: list[str] = []
        self._ply = np.zeros(self.m, dtype=np.int64)
        for el in elements:
            self.add(el, tag)

    def add(self, element: EdgeSubgraph, tag: str = "") -> None:
        if element.m != self.m:
            raise ValueError(f"element has {element.m} edge slots, expected {self.m}")
        self.elements.append(element)
        self.provenance.append(tag)
        self._ply += element.bits

    def extend(self, other: Iterable[EdgeSubgraph], tag: str | None = None) -> None:
        """Append elements; a GeneratingSet keeps its own tags unless ``tag`` is given."""
        if isinstance(other, GeneratingSet):
            for el, t in zip(other.elements, other.provenance):
                self.add(el, t if tag is None else tag)
        else:
            for el in other:
                self.add(el, tag or "")

    def copy(self) -> GeneratingSet:
        out = GeneratingSet(self.m)
        out.elements = list(self.elements)
        out.provenance = list(self.provenance)
        out._ply = self._ply.copy()
        return out

    def prefix(self, k: int) -> GeneratingSet:
        out = GeneratingSet(self.m)
        for el, t in zip(self.elements[:k], self.provenance[:k]):
            out.add(el, t)
        return out

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __repr__(self):
        return f"GeneratingSet(size={len(self)}, ply={self.ply}, m={self.m})"

    @property
    def ply_counts(self) -> np.ndarray:
        view = self._ply.view()
        view.setflags(write=False)
        return view

    @property
    def ply(self) -> int:
        return int(self._ply.max()) if self.m else 0

    def matrix(self) -> np.ndarray:
        if not self.elements:
            return np.zeros((0, self.m), dtype=bool)
        return np.stack([el.bits for el in self.elements])

    def lift(self, m_parent: int, edge_map) -> GeneratingSet:
        """Re-index onto a parent graph: local edge ``j`` becomes ``edge_map[j]``."""
        edge_map = np.asarray(edge_map, dtype=np.int64)
        out = GeneratingSet(m_parent)
        for el, t in zip(self.elements, self.provenance):
            out.add(EdgeSubgraph.from_edges(m_parent, edge_map[el.edge_ids]), t)
        return out


def _as_matrix(vectors) -> np.ndarray:
    if isinstance(vectors, GeneratingSet):
        return vectors.matrix()
    if isinstance(vectors, np.ndarray):
        return vectors.astype(bool, copy=False)
    rows = [v.bits for v in vectors]
    if not rows:
        return np.zeros((0, 0), dtype=bool)
    if len({r.shape[0] for r in rows}) != 1:
        raise ValueError("vectors are over different graphs")
    return np.stack(rows)


def independent_mask(vectors) -> np.ndarray:
    """Mask of the earliest elements that are linearly independent."""
    return _kernels.independent_rows(_as_matrix(vectors))


def gf2_rank(vectors) -> int:
    """Rank over GF(2) of a collection of edge vectors."""
    return int(independent_mask(vectors).sum())


def _check_members(g: Graph, B, edge_ids=None):
    allowed = None
    if edge_ids is not None:
        allowed = np.zeros(g.m, dtype=bool)
        allowed[np.asarray(list(edge_ids), dtype=np.int64)] = True
    for i, el in enumerate(B):
        if el.m != g.m:
            raise InvalidInput(f"element {i} is over a graph with {el.m} edges, expected {g.m}")
        if not is_eulerian(g, el):
            raise InvalidInput(f"element {i} is not Eulerian")
        if allowed is not None and (el.bits & ~allowed).any():
            raise InvalidInput(f"element {i} uses edges outside the target subgraph")


def is_generating_set(g: Graph, B, edge_ids=None) -> bool:
    """Does ``B`` generate the cycle space of ``g`` (or of its spanning subgraph on ``edge_ids``)?

    Raises :class:`InvalidInput` if an element is not an Eulerian subgraph of
    the target.
    """
    _check_members(g, B, edge_ids)
    return gf2_rank(list(B)) == cycle_space_dim(g, edge_ids)


def extract_basis(g: Graph, B: GeneratingSet, edge_ids=None) -> GeneratingSet:
    """Keep the earliest independent elements of a generating set.

    Dropping elements can only lower each edge's ply.
    """
    _check_members(g, B, edge_ids)
    mask = independent_mask(B) if len(B) else np.zeros(0, dtype=bool)
    if int(mask.sum()) != cycle_space_dim(g, edge_ids):
        raise PreconditionError("extract_basis needs a generating set")
    out = GeneratingSet(B.m)
    for keep, el, tag in zip(mask, B.elements, B.provenance):
        if keep:
            out.add(el, tag)
    return out


def fundamental_basis(g: Graph, f, edge_ids=None, tag: str = "fundamental") -> GeneratingSet:
    """One cycle per non-forest edge: the edge plus the forest path joining its ends."""
    ids = range(g.m) if edge_ids is None else sorted(int(e) for e in edge_ids)
    in_forest = np.zeros(g.m, dtype=bool)
    in_forest[list(f.edge_ids)] = True
    out = GeneratingSet(g.m)
    for e in ids:
        if in_forest[e]:
            continue
        u, v = g.edges[e]
        path = f.path_edges(u, v)
        out.add(EdgeSubgraph.from_edges(g.m, [e, *path]), tag)
    return out


def ply_profile(B: GeneratingSet) -> tuple[np.ndarray, int]:
    """Per-edge ply recomputed from the elements, and its maximum (0 if empty)."""
    counts = B.matrix().sum(axis=0, dtype=np.int64) if len(B) else np.zeros(B.m, dtype=np.int64)
    return counts, int(counts.max()) if counts.size else 0
