from itertools import combinations

import pytest
from hypothesis import strategies as st

from cliquecover import _kernels
from cliquecover.graph import Graph

G6_EDGES = [(1, 5), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]


def complete(n):
    return Graph.from_edges(combinations(range(n), 2), n=n)


def cycle(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], n=n)


def path(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], n=n)


def grid(r, c):
    edges = []
    for i in range(r):
        for j in range(c):
            v = i * c + j
            if j + 1 < c:
                edges.append((v, v + 1))
            if i + 1 < r:
                edges.append((v, v + c))
    return Graph.from_edges(edges, n=r * c)


@pytest.fixture
def g6():
    return Graph.from_edges(G6_EDGES)


@pytest.fixture(scope="session", autouse=True)
def _compiled():
    _kernels.warmup()


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges([e for e, k in zip(pairs, keep) if k], n=n)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
