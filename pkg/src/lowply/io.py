"""Flat-file formats for graphs, decompositions and generating sets.

Graph: ``e u v`` lines with 1-based labels, ``c`` comment lines, optional
``p edge n m`` header.  Canonical output is the header followed by edges
sorted by (u, v).

Decomposition: one bag per line, 1-based labels separated by spaces; a blank
line is an empty bag.  Generating set: one element per line as 0-based edge
ids; a blank line is the empty element.
"""

from __future__ import annotations

from .cycle_space import GeneratingSet, InvalidInput
from .graph import EdgeSubgraph, Graph
from .path_decomp import PathDecomposition


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _ints(tokens, lineno):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> Graph:
    n_declared = None
    m_declared = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "edge":
                raise ParseError(lineno, "header must read 'p edge <n> <m>'")
            n_declared, m_declared = _ints(tok[2:], lineno)
            continue
        if tok[0] != "e" or len(tok) != 3:
            raise ParseError(lineno, f"malformed line {line!r}")
        u, v = _ints(tok[1:], lineno)
        if u < 1 or v < 1:
            raise ParseError(lineno, "vertex labels are 1-based")
        if u == v:
            raise ParseError(lineno, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append((u - 1, v - 1))
    top = max((max(e) + 1 for e in edges), default=0)
    n = top if n_declared is None else n_declared
    if n < top:
        raise ParseError(0, f"header declares {n} vertices but label {top} is used")
    if m_declared is not None and m_declared != len(edges):
        raise ParseError(0, f"header declares {m_declared} edges, found {len(edges)}")
    return Graph(n, edges)


def canonical_graph(g: Graph) -> Graph:
    return Graph(g.n, sorted(g.edges))


def emit_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> PathDecomposition:
    bags = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.strip().startswith("c"):
            continue
        labels = _ints(raw.split(), lineno)
        if any(x < 1 for x in labels):
            raise ParseError(lineno, "vertex labels are 1-based")
        bags.append([x - 1 for x in labels])
    return PathDecomposition(bags)


def emit_decomposition(d: PathDecomposition) -> str:
    return "".join(" ".join(str(v + 1) for v in sorted(b)) + "\n" for b in d)


def parse_basis(text: str, g: Graph) -> GeneratingSet:
    B = GeneratingSet(g.m)
    for lineno, raw in enumerate(text.splitlines(), 1):
        ids = _ints(raw.split(), lineno)
        bad = [e for e in ids if not 0 <= e < g.m]
        if bad:
            raise ParseError(lineno, f"edge id {bad[0]} out of range 0..{g.m - 1}")
        try:
            B.add(EdgeSubgraph.from_edges(g.m, ids), f"file:{lineno}")
        except ValueError as exc:
            raise InvalidInput(f"line {lineno}: {exc}") from None
    return B


def emit_basis(B: GeneratingSet) -> str:
    return "".join(" ".join(map(str, el.edge_ids)) + "\n" for el in B)
