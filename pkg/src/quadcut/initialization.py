"""Degree-based starting points and Gaussian batches around them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError, GraphValidationError
from .graph import Graph, degree_stats
from .objectives import project_box
from .streams import MEMBER, Streams


class InitMethod(str, Enum):
    DUI = "dui"
    IDI = "idi"


@dataclass(frozen=True)
class InitConfig:
    method: InitMethod = InitMethod.IDI
    beta: float = 0.2
    eta: float = 0.8
    init_scale: float = 10_000.0
    # reuse one draw of the important-node signs for the whole run
    fix_idi_signs: bool = False

    def __post_init__(self):
        object.__setattr__(self, "method", InitMethod(self.method))
        if not 0.0 < self.beta < 1.0:
            raise ConfigError(f"beta must lie in (0, 1), got {self.beta}")
        if not self.eta > 0.0:
            raise ConfigError(f"eta must be positive, got {self.eta}")
        if not self.init_scale >= 1.0:
            raise ConfigError(f"init_scale must be >= 1, got {self.init_scale}")


def dui_init(g: Graph, rng: np.random.Generator) -> np.ndarray:
    """Node v uniform on ``[-(1 - d_v/Δ), 1 - d_v/Δ]``; hubs start near zero."""
    if g.max_degree == 0:
        raise GraphValidationError("degree-based initialization needs at least one edge")
    half_width = 1.0 - g.degrees / g.max_degree
    return rng.uniform(-half_width, half_width)


def important_nodes(g: Graph, beta: float) -> np.ndarray:
    """Mask of nodes whose degree exceeds the mean by more than ``beta`` standard deviations."""
    st = degree_stats(g)
    return g.degrees > st.mean + beta * st.std_dev


def idi_init(g: Graph, beta: float, rng: np.random.Generator, signs=None) -> np.ndarray:
    """±1 start: random sides for important nodes, then every other node joins
    the side holding fewer of its important neighbours (random on ties).

    ``signs`` optionally supplies the important-node sides (in node order)
    instead of drawing them.
    """
    imp = important_nodes(g, beta)
    k = int(imp.sum())
    if signs is None:
        p = rng.choice(np.array([-1.0, 1.0]), size=k)
    else:
        p = np.asarray(signs, dtype=np.float64)
        if p.shape != (k,):
            raise ValueError(f"expected {k} important-node signs")
    x = np.zeros(g.n)
    x[imp] = p
    plus = (x > 0).astype(np.float64)
    minus = (x < 0).astype(np.float64)
    n_plus = g.adjacency @ plus
    n_minus = g.adjacency @ minus
    rest = ~imp
    tie = rest & (n_plus == n_minus)
    x[rest & (n_plus < n_minus)] = 1.0
    x[rest & (n_plus > n_minus)] = -1.0
    x[tie] = rng.choice(np.array([-1.0, 1.0]), size=int(tie.sum()))
    return x


def scale_down(x, init_scale: float) -> np.ndarray:
    if init_scale < 1.0:
        raise ConfigError("init_scale must be >= 1")
    return np.asarray(x, dtype=np.float64) / init_scale


def gaussian_batch(mean, eta: float, batch_size: int, streams: Streams, counter: int) -> np.ndarray:
    """``batch_size`` draws of ``mean + sqrt(eta) * N(0, I)`` projected onto the box.

    ``mean`` is a vector (result ``(B, n, 1)``) or an ``(n, l)`` matrix
    (result ``(B, n, l)``). Member ``j`` uses the stream
    ``(MEMBER, counter, j)``.
    """
    if batch_size < 1:
        raise ConfigError("batch size must be at least 1")
    mu = np.asarray(mean, dtype=np.float64)
    if mu.ndim == 1:
        mu = mu[:, None]
    sd = np.sqrt(eta)
    out = np.empty((batch_size,) + mu.shape)
    for j in range(batch_size):
        out[j] = mu + sd * streams.gen(MEMBER, counter, j).standard_normal(mu.shape)
    return project_box(out)
