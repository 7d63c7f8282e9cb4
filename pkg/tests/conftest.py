import itertools

import numpy as np
import pytest

from quadcut import _backend
from quadcut.graph import Graph, generate_er, is_connected


def complete(n):
    return Graph(n, list(itertools.combinations(range(n), 2)), name=f"K{n}")


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], name=f"S{leaves}")


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], name=f"K{a},{b}")


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner, name="petersen")


def dense_laplacian(g):
    """L = D - A assembled entry by entry from the edge list."""
    L = np.zeros((g.n, g.n))
    for u, v in g.edges:
        L[u, v] -= 1
        L[v, u] -= 1
        L[u, u] += 1
        L[v, v] += 1
    return L


def brute_maxcut(g):
    """Plain enumeration of every assignment (no symmetry tricks)."""
    best = 0
    for bits in itertools.product((0, 1), repeat=g.n):
        best = max(best, sum(bits[u] != bits[v] for u, v in g.edges))
    return best


def random_connected(rng, n_lo=2, n_hi=32, p_lo=0.15, p_hi=0.6):
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        g = generate_er(n, float(rng.uniform(p_lo, p_hi)), int(rng.integers(2**31)))
        if g.m and is_connected(g):
            return g


def connected_graphs(n):
    """Every connected labelled graph on n nodes."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        A = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            A[u, v] = A[v, u] = True
        reach = {0}
        frontier = [0]
        while frontier:
            u = frontier.pop()
            for v in np.flatnonzero(A[u]):
                if v not in reach:
                    reach.add(int(v))
                    frontier.append(int(v))
        if len(reach) == n:
            yield Graph(n, edges)


@pytest.fixture
def edge():
    return Graph(2, [(0, 1)], name="edge")


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def s3():
    return star(3)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture(params=["compiled", "python"])
def backend(request, monkeypatch):
    """Run a test once per kernel implementation."""
    if request.param == "compiled":
        if _backend.compiled is None:
            pytest.skip("compiled kernels not built")
        monkeypatch.setattr(_backend, "kernels", _backend.compiled)
    else:
        monkeypatch.setattr(_backend, "kernels", _backend.pure)
    return request.param


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
