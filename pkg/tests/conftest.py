import networkx as nx
import numpy as np
import pytest

from lowply.graph import EdgeSubgraph, Graph


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    return Graph(G.number_of_nodes(), sorted(tuple(sorted(e)) for e in G.edges()))


def sub(g: Graph, *pairs) -> EdgeSubgraph:
    return EdgeSubgraph.from_edges(g.m, [g.edge_id(u, v) for u, v in pairs])


def random_forest(rng, n, p_edge=0.8) -> Graph:
    edges = [(int(rng.integers(v)), v) for v in range(1, n) if rng.random() < p_edge]
    return Graph(n, edges)


@pytest.fixture
def k4():
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(number: int, passed: bool, detail: str):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
