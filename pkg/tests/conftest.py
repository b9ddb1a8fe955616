import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from rescoal.graphs import Graph


def grounded_resistance(g: Graph) -> np.ndarray:
    """Independent oracle: ground vertex 0 and invert the reduced Laplacian.

    With ``M = L_00^{-1}`` (row/column 0 removed), ``r_0j = M_jj`` and
    ``r_ij = M_ii + M_jj - 2 M_ij``.  Shares nothing with the rank-one-shift
    route used by the package.
    """
    a = g.adjacency()
    lap = np.diag(a.sum(1)) - a
    m = np.zeros((g.n, g.n))
    m[1:, 1:] = np.linalg.solve(lap[1:, 1:], np.eye(g.n - 1))
    d = np.diag(m)
    return d[:, None] + d[None, :] - 2 * m


def random_connected_graph(rng, n_max=12, p=0.35) -> Graph:
    """Random spanning tree plus random extra edges."""
    n = int(rng.integers(2, n_max + 1))
    order = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        u, v = int(order[i]), int(order[rng.integers(0, i)])
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, frozenset(edges))


@st.composite
def connected_graphs(draw, n_max=10):
    n = draw(st.integers(2, n_max))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = {(p, i) for i, p in enumerate(parents, 1)}
    extra = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    edges |= {(min(u, v), max(u, v)) for u, v in extra if u != v}
    return Graph(n, frozenset(edges))


@st.composite
def any_graphs(draw, n_max=8):
    n = draw(st.integers(1, n_max))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(e for e, k in zip(pairs, keep) if k))


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
