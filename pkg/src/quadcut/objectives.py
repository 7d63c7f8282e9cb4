"""Relaxed and lifted quadratic objectives, their ascent directions, box
projection, rounding and fixed-point predicates.

States are plain float64 arrays. A single relaxed point is a length-n
vector, a lifted point is an ``(n, l)`` matrix, and a batch of either is a
``(B, n, l)`` stack (``l = 1`` for the unlifted case).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GraphValidationError, ShapeError
from .graph import Graph, laplacian_apply

BOX_TOL = 1e-12


@dataclass
class CutSolution:
    """A binary assignment with its cut value and where it came from."""

    assignment: np.ndarray
    cut_value: int
    algorithm: str = ""
    seed: int | None = None
    batch_index: int = -1
    member_index: int = -1
    wall_time: float = 0.0
    meta: dict = field(default_factory=dict)


def as_batch(state) -> np.ndarray:
    """View a vector, ``(n, l)`` matrix or ``(B, n, l)`` stack as ``(B, n, l)``."""
    s = np.asarray(state, dtype=np.float64)
    if s.ndim == 1:
        return s[None, :, None]
    if s.ndim == 2:
        return s[None]
    if s.ndim == 3:
        return s
    raise ShapeError(f"state must have 1-3 dimensions, got {s.ndim}")


def _check_len(g, x):
    if x.shape[0] != g.n:
        raise ShapeError(f"length {x.shape[0]} does not match n={g.n}")


def _check_box(x):
    if x.size and np.max(np.abs(x)) > 1.0 + BOX_TOL:
        raise GraphValidationError("state leaves the box [-1, 1]")


def cut_value(g: Graph, z) -> int:
    """Number of edges whose endpoints get different labels."""
    z = np.asarray(z)
    _check_len(g, z)
    if not np.isin(z, (0, 1)).all():
        raise GraphValidationError("assignment entries must be 0 or 1")
    if g.m == 0:
        return 0
    return int(np.count_nonzero(z[g.edges[:, 0]] != z[g.edges[:, 1]]))


def quco_objective(g: Graph, x) -> float:
    """``x^T L x``, the sum of squared differences over edges."""
    x = np.asarray(x, dtype=np.float64)
    _check_len(g, x)
    _check_box(x)
    return float(x @ laplacian_apply(g, x))


def ascent_direction_unlifted(g: Graph, x) -> np.ndarray:
    """``L x``. Half the analytic gradient of ``x^T L x``; the 2 lives in the step size."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeError("expected a vector")
    return laplacian_apply(g, x)


def luco_objective(g: Graph, X) -> float:
    """``tr(X^T L X)``: the relaxed objective summed over columns."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    _check_len(g, X)
    _check_box(X)
    return float(np.sum(X * laplacian_apply(g, X)))


def ascent_direction_lifted(g: Graph, X) -> np.ndarray:
    """``L X``, column by column."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ShapeError("expected an (n, l) matrix")
    return laplacian_apply(g, X)


def batch_objective(g: Graph, states, workers: int = 1) -> np.ndarray:
    """Objective value per member of a ``(B, n, l)`` stack."""
    s = as_batch(states)
    return np.einsum("bnl,bnl->b", s, laplacian_apply(g, s, workers))


def project_box(state) -> np.ndarray:
    return np.clip(np.asarray(state, dtype=np.float64), -1.0, 1.0)


def round_unlifted(x) -> np.ndarray:
    """Side 1 for strictly positive entries; zero goes to side 0."""
    return (np.asarray(x) > 0).astype(np.int8)


def round_lifted(X) -> np.ndarray:
    """Side 1 when the row sum is non-negative (last axis summed); zero goes to side 1."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    return (X.sum(axis=-1) >= 0).astype(np.int8)


def to_spins(z) -> np.ndarray:
    """Map a 0/1 assignment to the corresponding ±1 vector."""
    return 2.0 * np.asarray(z, dtype=np.float64) - 1.0


def _is_boundary(x):
    return bool(np.all(np.abs(x) == 1.0))


def is_maxcut_fixed_point_unlifted(g: Graph, x, alpha: float) -> bool:
    """±1-valued, outside the Laplacian null space, and unmoved by one projected step."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    x = np.asarray(x, dtype=np.float64)
    _check_len(g, x)
    if not _is_boundary(x):
        return False
    direction = laplacian_apply(g, x)
    if not np.any(direction):
        return False
    return bool(np.array_equal(project_box(x + alpha * direction), x))


def is_maxcut_fixed_point_lifted(g: Graph, X) -> bool:
    """±1-valued with at least two distinct rows."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    _check_len(g, X)
    if not _is_boundary(X):
        return False
    return bool(np.any(X != X[0]))
