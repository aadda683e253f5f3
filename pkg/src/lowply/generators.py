"""Instance families.  Random families take a seed or a numpy Generator.

Families that come with a path decomposition return ``(graph, decomposition)``;
the others return ``(graph, None)``.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, cycle_rank
from .path_decomp import PathDecomposition


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def grid(rows: int, cols: int):
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges), None


def complete(n: int):
    if n < 1:
        raise ValueError("n must be positive")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)]), None


def cycle(n: int):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)]), None


def random_tree(n: int, seed=None):
    rng = _rng(seed)
    return Graph(n, [(int(rng.integers(v)), v) for v in range(1, n)]), None


def random_interval(n: int, t: int, seed=None, clique: bool = False, p: float = 0.5):
    """Connected graph with a width-``t`` decomposition.

    Vertices arrive one at a time; the newcomer joins a random nonempty subset
    of the at most ``t`` still-active vertices, and once ``t + 1`` are active a
    random one retires first.  With ``clique`` the first ``t + 1`` vertices
    form a clique, so the pathwidth is exactly ``t`` when ``n > t``.
    """
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    rng = _rng(seed)
    active: list[int] = []
    edges = []
    bags = []
    for v in range(n):
        if len(active) == t + 1:
            active.pop(int(rng.integers(len(active))))
        if active:
            if clique and v <= t:
                chosen = list(active)
            else:
                pick = rng.random(len(active)) < p
                if not pick.any():
                    pick[rng.integers(len(active))] = True
                chosen = [w for w, keep in zip(active, pick) if keep]
            edges += [(w, v) for w in chosen]
        active.append(v)
        bags.append(sorted(active))
    return Graph(n, edges), PathDecomposition(bags)


def _block(kind: str, size: int, rng):
    # local edges on 0..size-1
    if kind == "bridge":
        return 2, [(0, 1)]
    if kind == "cycle":
        return size, [(i, (i + 1) % size) for i in range(size)]
    if kind == "complete":
        return size, [(u, v) for u in range(size) for v in range(u + 1, size)]
    if kind == "wheel":
        return size, [(0, i) for i in range(1, size)] + [(i, i % (size - 1) + 1) for i in range(1, size)]
    raise ValueError(f"unknown block kind {kind!r}")


def block_chain(blocks: int, seed=None, kinds=("bridge", "cycle", "complete", "wheel")):
    """Blocks glued in a row at single cut vertices; one bag per block.

    Adhesions have size 1.  With ``kinds=("bridge", "cycle")`` the result is
    a cactus.
    """
    rng = _rng(seed)
    n = 1
    edges = []
    bags = []
    joint = 0
    for _ in range(blocks):
        kind = kinds[int(rng.integers(len(kinds)))]
        size = {"bridge": 2, "cycle": int(rng.integers(3, 7)), "complete": int(rng.integers(3, 6)),
                "wheel": int(rng.integers(4, 7))}[kind]
        size, local = _block(kind, size, rng)
        # local vertex 0 is the joint; the rest are new
        ids = [joint] + list(range(n, n + size - 1))
        n += size - 1
        edges += [(ids[a], ids[b]) for a, b in local]
        bags.append(ids)
        joint = ids[int(rng.integers(1, size))]
    return Graph(n, edges), PathDecomposition(bags)


def cactus(n: int, seed=None):
    """Random cactus on about ``n`` vertices: pendant edges and cycles hung on random vertices."""
    rng = _rng(seed)
    edges = []
    count = 1
    while count < n:
        at = int(rng.integers(count))
        room = n - count
        if room >= 2 and rng.random() < 0.6:
            length = int(rng.integers(3, min(6, room + 1) + 1))
            ring = [at] + list(range(count, count + length - 1))
            edges += [(ring[i], ring[(i + 1) % length]) for i in range(length)]
            count += length - 1
        else:
            edges.append((at, count))
            count += 1
    return Graph(count, edges), None


def random_adhesion(bags: int, k: int, seed=None, fresh: tuple[int, int] = (1, 3), max_bag_rank: int = 4):
    """Path of bags whose consecutive overlaps have size at most ``k``.

    Each bag keeps a random subset (size 1..k) of the previous bag and adds
    ``fresh`` new vertices; new edges touch a new vertex and are added while
    the bag graph's cycle rank stays at most ``max_bag_rank``.
    """
    rng = _rng(seed)
    n = 0
    edges: set[tuple[int, int]] = set()
    out_bags = []
    prev: list[int] = []
    for i in range(bags):
        keep = []
        if prev:
            size = int(rng.integers(1, min(k, len(prev)) + 1))
            keep = sorted(int(x) for x in rng.choice(prev, size=size, replace=False))
        new = list(range(n, n + int(rng.integers(fresh[0], fresh[1] + 1))))
        n += len(new)
        bag = keep + new
        # spanning edges first so the bag graph is connected
        local: list[tuple[int, int]] = []
        for j, v in enumerate(new):
            others = keep + new[:j]
            if others:
                local.append((int(rng.choice(others)), v))
        rank = 0
        candidates = [(u, v) for v in new for u in bag if u < v]
        rng.shuffle(candidates)
        present = {tuple(sorted(e)) for e in local}
        for u, v in candidates:
            key = (min(u, v), max(u, v))
            if key in present or rank >= max_bag_rank:
                continue
            if rng.random() < 0.5:
                present.add(key)
                rank += 1
        edges |= present
        out_bags.append(bag)
        prev = bag
    g = Graph(n, sorted(edges))
    return g, PathDecomposition(out_bags)


FAMILIES = {
    "grid": grid,
    "complete": complete,
    "cycle": cycle,
    "tree": random_tree,
    "random_interval": random_interval,
    "cactus": cactus,
    "block_chain": block_chain,
    "random_adhesion": random_adhesion,
}


def generate(family: str, *args, **kwargs):
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return fn(*args, **kwargs)


def corpus(seed: int = 0, max_rank: int = 4) -> list[tuple[str, Graph, PathDecomposition | None]]:
    """Small fixed corpus of named graphs with cycle rank at most ``max_rank``."""
    ss = np.random.SeedSequence(seed)
    out = []

    def keep(name, g, d=None):
        if cycle_rank(g) <= max_rank:
            out.append((name, g, d))

    for n in range(1, 13):
        keep(f"path-{n}", Graph(n, [(i, i + 1) for i in range(n - 1)]))
    for n in range(3, 11):
        keep(f"cycle-{n}", cycle(n)[0])
    for n in range(1, 5):
        keep(f"complete-{n}", complete(n)[0])
    for r in range(1, 4):
        for c in range(r, 6):
            keep(f"grid-{r}x{c}", grid(r, c)[0])
    keep("k33", Graph(6, [(u, v) for u in range(3) for v in range(3, 6)]))
    keep("wheel-5", Graph(5, [(0, i) for i in range(1, 5)] + [(i, i % 4 + 1) for i in range(1, 5)]))
    keep("k4-minus-edge", Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]))
    keep("theta", Graph(5, [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)]))
    keep("bowtie", Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]))
    gens = iter(np.random.default_rng(s) for s in ss.spawn(400))
    for i in range(60):
        keep(f"tree-{i}", random_tree(int(next(gens).integers(2, 16)), next(gens))[0])
    for i in range(60):
        rng = next(gens)
        keep(f"cactus-{i}", cactus(int(rng.integers(3, 14)), rng)[0])
    for i in range(60):
        rng = next(gens)
        n = int(rng.integers(4, 11))
        g, _ = random_tree(n, rng)
        extra = set(g.edges)
        target = int(rng.integers(1, max_rank + 1))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in extra]
        rng.shuffle(pairs)
        keep(f"sparse-{i}", Graph(n, list(g.edges) + pairs[:target]))
    for i in range(80):
        rng = next(gens)
        g, d = random_interval(int(rng.integers(4, 10)), int(rng.integers(1, 4)), rng, p=0.4)
        keep(f"interval-{i}", g, d)
    return out


__all__ = [
    "FAMILIES",
    "block_chain",
    "cactus",
    "complete",
    "corpus",
    "cycle",
    "generate",
    "grid",
    "random_adhesion",
    "random_interval",
    "random_tree",
]
