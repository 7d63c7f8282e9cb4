"""Batched heavy-ball projected gradient ascent.

Per member and iteration::

    v <- mu * v + L X
    X <- clip(X + alpha * v, -1, 1)

with ``v`` starting at zero. ``mu = 0`` is the plain projected step. The
velocity is never projected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ConfigError, GraphValidationError, NumericOverflowError, ShapeError
from .graph import Graph
from .objectives import BOX_TOL, as_batch, batch_objective


@dataclass(frozen=True)
class AscentParams:
    alpha: float
    iterations: int
    momentum: float = 0.9

    def __post_init__(self):
        if not (self.alpha > 0 and np.isfinite(self.alpha)):
            raise ConfigError(f"alpha must be a positive finite number, got {self.alpha}")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ConfigError(f"iterations must be a positive integer, got {self.iterations}")
        object.__setattr__(self, "iterations", int(self.iterations))
        if not 0.0 <= self.momentum < 1.0:
            raise ConfigError(f"momentum must lie in [0, 1), got {self.momentum}")


def _to_columns(batch):
    b, n, l = batch.shape
    # always a fresh buffer: the kernels work in place
    return np.array(batch.transpose(0, 2, 1).reshape(b * l, n), order="C", copy=True)


def _from_columns(cols, b, n, l):
    return cols.reshape(b, l, n).transpose(0, 2, 1).copy()


def run_ascent(g: Graph, batch, params: AscentParams, *, workers: int = 1,
               early_exit: bool = True, trace=None):
    """Ascend a ``(B, n, l)`` stack. Returns ``(states, iterations_used)``.

    ``iterations_used[j]`` is how many iterations member ``j`` executed before
    reaching a state no further step can change (all of them when
    ``early_exit`` is off). ``trace(iteration, member, objective)`` is called
    after every iteration when given.
    """
    batch = np.asarray(batch, dtype=np.float64)
    if batch.ndim != 3:
        raise ShapeError("expected a (B, n, l) stack")
    b, n, l = batch.shape
    if n != g.n:
        raise ShapeError(f"row dimension {n} does not match n={g.n}")
    if batch.size and np.nanmax(np.abs(batch)) > 1.0 + BOX_TOL:
        raise GraphValidationError("initial state leaves the box [-1, 1]")
    cols = _to_columns(batch)
    vel = np.zeros_like(cols)
    args = (g.indptr, g.indices, g.degree_vector, cols, vel, params.alpha, params.momentum)

    if trace is None:
        used, bad = _backend.kernels.ascend_columns(*args, params.iterations, early_exit, int(workers))
        _raise_bad(bad, l)
    else:
        used = np.zeros(b * l, dtype=np.int64)
        for t in range(params.iterations):
            _, bad = _backend.kernels.ascend_columns(*args, 1, False, int(workers))
            _raise_bad(bad + (bad > 0) * t, l)
            used += 1
            values = batch_objective(g, _from_columns(cols, b, n, l))
            for j in range(b):
                trace(t + 1, j, float(values[j]))
    return _from_columns(cols, b, n, l), used.reshape(b, l).max(axis=1)


def _raise_bad(bad, l):
    hit = np.flatnonzero(bad)
    if hit.size:
        first = hit[np.argmin(bad[hit])]
        raise NumericOverflowError(int(bad[first]), int(first // l))


def ascend(g: Graph, state, params: AscentParams, *, workers: int = 1,
           early_exit: bool = True, trace=None) -> np.ndarray:
    """Run ``params.iterations`` ascent steps on a vector, matrix or stack.

    The result has the shape of ``state``.
    """
    state = np.asarray(state, dtype=np.float64)
    out, _ = run_ascent(g, as_batch(state), params, workers=workers,
                        early_exit=early_exit, trace=trace)
    return out.reshape(state.shape)


def detect_fixed_point(prev, nxt, tol: float = 0.0) -> np.ndarray:
    """Per member of a stack: did no entry move by more than ``tol``?"""
    a = as_batch(prev)
    b = as_batch(nxt)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return np.abs(a - b).max(axis=(1, 2)) <= tol
