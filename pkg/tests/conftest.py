from itertools import combinations

import pytest
from hypothesis import strategies as st

from romanbond.graph import build_graph, enumerate_small_graphs
from romanbond.graphio import generate


def path(n):
    return generate("path", n)[0]


def cycle(n):
    return generate("cycle", n)[0]


def complete(n):
    return generate("complete", n)[0]


def star(k):
    return generate("star", k)[0]


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        # spanning path guarantees connectivity
        chosen = sorted(set(chosen) | {(i, i + 1) for i in range(n - 1)})
    return build_graph(n, chosen)


@pytest.fixture(scope="session")
def connected_upto6():
    return [g for n in range(1, 7) for g in enumerate_small_graphs(n, connected_only=True)]


@pytest.fixture(scope="session")
def connected_upto5():
    return [g for n in range(1, 6) for g in enumerate_small_graphs(n, connected_only=True)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
