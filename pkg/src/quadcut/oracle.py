"""Exhaustive reference answers for small graphs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import OracleSizeError, QuadcutError
from .graph import Graph, laplacian_apply
from .objectives import cut_value, round_lifted

MAX_BRUTE_NODES = 26
MAX_LIFTED_ENTRIES = 20


class FixedPointCheckError(QuadcutError, AssertionError):
    """An enumerated matrix contradicts the lifted fixed-point characterisation."""


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: np.ndarray
    # optimal assignments, a partition and its complement counted separately
    count_optimal: int


def brute_force_maxcut(g: Graph, workers: int = 1) -> OracleResult:
    """Exact MaxCut over all ``2**(n-1)`` assignments with node 0 on side 0.

    Consecutive assignments differ in one node (Gray code), so each step
    costs one degree. The witness is the optimal assignment with the smallest
    integer code (bit ``v`` = node ``v``) among those scanned.
    """
    if g.n > MAX_BRUTE_NODES:
        raise OracleSizeError(f"n={g.n} exceeds the exhaustive limit of {MAX_BRUTE_NODES}")
    split = 0 if workers <= 1 else min(g.n - 1, 6)
    opt, code, count = _backend.kernels.gray_maxcut(g.indptr, g.indices, g.n, split, int(workers))
    witness = ((code >> np.arange(g.n)) & 1).astype(np.int8)
    assert cut_value(g, witness) == opt
    return OracleResult(optimum=int(opt), witness=witness, count_optimal=2 * int(count))


def _pm_matrices(n, l, start, stop):
    codes = np.arange(start, stop, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n * l)) & 1
    return (2 * bits - 1).astype(np.int8).reshape(-1, n, l)


def enumerate_lifted_fixed_points(g: Graph, l: int, alpha: float = 0.1,
                                  chunk: int = 1 << 15) -> np.ndarray:
    """All ±1 ``(n, l)`` matrices whose rows are not all identical.

    Every matrix is checked on the way: each listed one must survive one
    projected ascent step with step size ``alpha`` unchanged, and each
    excluded one (identical rows) must round to a zero cut. A violation
    raises ``FixedPointCheckError``. Returns a ``(K, n, l)`` int8 stack.
    """
    if l < 1:
        raise ValueError("l must be positive")
    if g.n * l > MAX_LIFTED_ENTRIES:
        raise OracleSizeError(f"n*l={g.n * l} exceeds {MAX_LIFTED_ENTRIES}")
    total = 1 << (g.n * l)
    keep = []
    for start in range(0, total, chunk):
        X = _pm_matrices(g.n, l, start, min(start + chunk, total))
        same = (X == X[:, :1, :]).all(axis=(1, 2))
        Xf = X.astype(np.float64)
        stepped = np.clip(Xf + alpha * laplacian_apply(g, Xf), -1.0, 1.0)
        moved = (stepped != Xf).any(axis=(1, 2))
        if moved[~same].any():
            raise FixedPointCheckError("a non-constant ±1 matrix moved under one ascent step")
        z = round_lifted(Xf[same])
        if z.size and (z != z[:, :1]).any():
            raise FixedPointCheckError("an identical-row matrix rounded to a non-empty cut")
        keep.append(X[~same])
    return np.concatenate(keep)
