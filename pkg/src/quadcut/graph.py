"""Undirected simple graphs in CSR form, Gset-style I/O and ER generation."""

from __future__ import annotations

import io
import os
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc

from . import _backend
from .errors import GraphBoundsError, GraphParseError, GraphValidationError, ShapeError


def _readonly(a):
    a.setflags(write=False)
    return a


class Graph:
    """Immutable undirected simple graph.

    Nodes are ``0..n-1``. Adjacency is stored as CSR arrays with each
    neighbour list sorted; ``edges`` holds every edge once as ``(u, v)`` with
    ``u < v`` in lexicographic order.
    """

    def __init__(self, n, edges, name=None):
        n = int(n)
        if n < 1:
            raise GraphValidationError("a graph needs at least one node")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise GraphBoundsError(f"node id out of range for n={n}")
            if np.any(e[:, 0] == e[:, 1]):
                raise GraphValidationError("self-loops are not allowed")
            e = np.sort(e, axis=1)
            key = np.unique(e[:, 0] * n + e[:, 1])
            e = np.column_stack([key // n, key % n])
        self.n = n
        self.m = len(e)
        self.edges = _readonly(e)
        self.name = name

        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        deg = np.bincount(src, minlength=n).astype(np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        self.indptr = _readonly(indptr)
        self.indices = _readonly(dst[order].astype(np.int32))
        self.degrees = _readonly(deg)
        self.max_degree = int(deg.max()) if n else 0
        self._frozen = True

    def __setattr__(self, key, value):
        if getattr(self, "_frozen", False):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, key, value)

    @classmethod
    def from_adjacency(cls, adj, name=None):
        """Build from a dense or sparse symmetric 0/1 matrix."""
        a = sp.triu(sp.csr_matrix(adj), k=1).tocoo()
        return cls(a.shape[0], np.column_stack([a.row, a.col]), name=name)

    @cached_property
    def degree_vector(self):
        return _readonly(self.degrees.astype(np.float64))

    @cached_property
    def adjacency(self):
        """Sparse adjacency matrix (float64 CSR)."""
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def subgraph(self, nodes):
        """Induced subgraph on ``nodes``, relabelled ``0..len(nodes)-1`` in the given order."""
        nodes = np.asarray(nodes, dtype=np.int64)
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[nodes] = np.arange(len(nodes))
        e = relabel[self.edges]
        e = e[(e >= 0).all(axis=1)]
        return Graph(len(nodes), e, name=self.name)

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.edges, other.edges))

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeStats:
    mean: float
    variance: float

    @property
    def std_dev(self):
        return float(np.sqrt(self.variance))


def degree_stats(g: Graph) -> DegreeStats:
    """Population mean and variance of the degree sequence."""
    d = g.degrees.astype(np.float64)
    mean = 2.0 * g.m / g.n
    return DegreeStats(mean=mean, variance=float(np.mean((d - mean) ** 2)))


def connected_components(g: Graph) -> list[np.ndarray]:
    """Node sets of the connected components, each sorted, ordered by smallest node."""
    _, labels = _cc(g.adjacency, directed=False)
    order = np.argsort(labels, kind="stable")
    splits = np.flatnonzero(np.diff(labels[order])) + 1
    comps = np.split(order, splits)
    comps.sort(key=lambda c: c[0])
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def laplacian_apply(g: Graph, batch, workers: int = 1) -> np.ndarray:
    """Compute ``L @ y`` as ``d * y - A @ y`` without forming ``L``.

    ``batch`` may be a vector of length n, an ``(n, k)`` matrix (columns are
    independent), or a ``(B, n, l)`` stack of states; the result has the
    same shape.
    """
    y = np.asarray(batch, dtype=np.float64)
    if y.ndim == 1:
        cols = y[None, :]
    elif y.ndim == 2:
        cols = y.T
    elif y.ndim == 3:
        cols = y.transpose(0, 2, 1).reshape(-1, y.shape[1])
    else:
        raise ShapeError(f"expected 1-3 dimensions, got {y.ndim}")
    if cols.shape[1] != g.n:
        raise ShapeError(f"row dimension {cols.shape[1]} does not match n={g.n}")
    cols = np.ascontiguousarray(cols)
    out = np.empty_like(cols)
    _backend.kernels.laplacian_columns(g.indptr, g.indices, g.degree_vector, cols, out, int(workers))
    if y.ndim == 1:
        return out[0]
    if y.ndim == 2:
        return out.T.copy()
    b, n, l = y.shape
    return out.reshape(b, l, n).transpose(0, 2, 1).copy()


# --- text I/O ---------------------------------------------------------------

def parse_edge_list(text, name=None) -> Graph:
    """Parse Gset-style text: ``n m`` header, then 1-based ``u v [w]`` lines.

    Lines starting with ``%`` or ``#`` and blank lines are skipped. Weights
    are ignored (with a warning) and duplicate edges collapse.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode()
    lines = text.splitlines() if isinstance(text, str) else text
    header = None
    edges = []
    weighted = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "%#":
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphParseError("header must be 'n m'", lineno)
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise GraphParseError(f"non-integer header {line!r}", lineno) from None
            if header[0] < 1 or header[1] < 0:
                raise GraphParseError("header needs n >= 1 and m >= 0", lineno)
            continue
        if len(parts) not in (2, 3):
            raise GraphParseError(f"expected 'u v [w]', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            if len(parts) == 3:
                float(parts[2])
                weighted = True
        except ValueError:
            raise GraphParseError(f"non-numeric field in {line!r}", lineno) from None
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphBoundsError(f"node id out of range 1..{n} in {line!r}", lineno)
        if u == v:
            raise GraphValidationError(f"line {lineno}: self-loop on node {u}")
        edges.append((u - 1, v - 1))
    if header is None:
        raise GraphParseError("missing 'n m' header")
    if weighted:
        warnings.warn("edge weights ignored: solving unweighted MaxCut", stacklevel=2)
    g = Graph(header[0], edges, name=name)
    if g.m != header[1]:
        warnings.warn(f"header declares m={header[1]} but {g.m} distinct edges were read",
                      stacklevel=2)
    return g


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read(), name=os.path.basename(str(path)))


def serialize(g: Graph) -> str:
    """Canonical text: header then sorted 1-based ``u v`` lines."""
    buf = io.StringIO()
    buf.write(f"{g.n} {g.m}\n")
    if g.m:
        np.savetxt(buf, g.edges + 1, fmt="%d")
    return buf.getvalue()


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(g))


# --- generation -------------------------------------------------------------

def generate_er(n: int, p: float, seed: int, chunk: int = 1 << 22) -> Graph:
    """G(n, p) with one Bernoulli draw per pair in ``(u, v), u < v`` order.

    Draws come from a Philox counter-based stream keyed by ``seed``, so the
    edge set depends only on ``(n, p, seed)``.
    """
    if n < 1:
        raise GraphValidationError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise GraphValidationError(f"p must lie in [0, 1], got {p}")
    rng = np.random.Generator(np.random.Philox(seed))
    # pairs of row u occupy positions starts[u] .. starts[u] + n-2-u
    row_len = np.arange(n - 1, -1, -1, dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(row_len)])
    total = int(starts[-1])
    found = []
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        pos = np.flatnonzero(rng.random(hi - lo) < p) + lo
        u = np.searchsorted(starts, pos, side="right") - 1
        v = u + 1 + (pos - starts[u])
        found.append(np.column_stack([u, v]))
    edges = np.concatenate(found) if found else np.empty((0, 2), dtype=np.int64)
    return Graph(n, edges, name=f"er_n{n}_p{p}_s{seed}")
