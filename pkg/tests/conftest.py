import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from bchrome.generators import gen_bridged_pair, gen_petersen, gen_random_regular_c4_free
from bchrome.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges())
    return h


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return gen_petersen()


@pytest.fixture(scope="session")
def bridged_petersen(petersen) -> Graph:
    return gen_bridged_pair(petersen, (0, 1))


@pytest.fixture(scope="session")
def bridged_quartic() -> Graph:
    h = gen_random_regular_c4_free(16, 4, seed=3, max_tries=500)
    return gen_bridged_pair(h, h.edges()[0])


def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in __import__("sys").modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
