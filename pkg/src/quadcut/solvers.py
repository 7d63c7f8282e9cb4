"""Batched MaxCut solvers over the relaxed (pQUCO), lifted (pLUCO) and
dimension-alternating (pDECO) objectives.

Every batch draws ``B`` Gaussian starting points around a mean, runs the
momentum ascent, rounds each member and keeps the best cut. The first batch
of a run is centred on a degree-based initial vector; later batches are
centred on the best assignment found so far.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConfigError, GraphValidationError
from .evo import Candidate, SearchConfig, evolve, sample_population
from .graph import Graph, connected_components
from .initialization import InitConfig, InitMethod, dui_init, gaussian_batch, idi_init, important_nodes, scale_down
from .objectives import CutSolution, cut_value, round_lifted, round_unlifted, to_spins
from .pga import AscentParams, run_ascent
from .streams import EVO, INIT, Streams


class Algorithm(str, Enum):
    PQUCO = "pquco"
    PLUCO = "pluco"
    PDECO = "pdeco"


class DecoCarry(str, Enum):
    INCUMBENT_COLUMN = "incumbent-column"
    FRESH = "fresh"


@dataclass(frozen=True)
class SolverConfig:
    algorithm: Algorithm = Algorithm.PDECO
    batch_size: int = 64
    lift_dim: int = 2
    ascent: AscentParams = field(default_factory=lambda: AscentParams(0.05, 500, 0.9))
    # pDECO's lifted phase; falls back to ``ascent``
    lifted_ascent: AscentParams | None = None
    init: InitConfig = field(default_factory=InitConfig)
    num_batches: int = 3
    # pDECO: unlifted/lifted alternations; None means "until the time budget"
    deco_rounds: int | None = 2
    deco_carry: DecoCarry = DecoCarry.INCUMBENT_COLUMN
    time_budget: float | None = None
    search: SearchConfig | None = None

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        object.__setattr__(self, "deco_carry", DecoCarry(self.deco_carry))
        if self.batch_size < 1:
            raise ConfigError("batch_size must be at least 1")
        if self.lift_dim < 1:
            raise ConfigError("lift_dim must be at least 1")
        if self.algorithm is not Algorithm.PQUCO and self.lift_dim < 2:
            raise ConfigError(f"{self.algorithm.value} needs lift_dim >= 2")
        if self.num_batches < 1:
            raise ConfigError("num_batches must be at least 1")
        if self.deco_rounds is not None and self.deco_rounds < 1:
            raise ConfigError("deco_rounds must be at least 1")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ConfigError("time_budget must be positive")
        if (self.algorithm is Algorithm.PDECO and self.deco_rounds is None
                and self.time_budget is None):
            raise ConfigError("pdeco needs deco_rounds or a time budget")

    def phase_params(self, lifted: bool) -> AscentParams:
        if lifted and self.algorithm is Algorithm.PDECO and self.lifted_ascent is not None:
            return self.lifted_ascent
        return self.ascent


class _Run:
    """State of one solve on one connected graph."""

    def __init__(self, g: Graph, cfg: SolverConfig, streams: Streams, workers: int, trace=None):
        if g.m == 0:
            raise GraphValidationError("graph has no edges; the maximum cut is 0")
        self.g = g
        self.cfg = cfg
        self.streams = streams
        self.workers = workers
        self.ascent_trace = trace
        self.t0 = time.perf_counter()
        self.counter = 0
        self.best_z = None
        self.best_cut = -1
        self.best_at = (-1, -1)
        self.tuned: dict[str, AscentParams] = {}
        self.searches = 0
        self.batch_trace: list[dict] = []
        self.search_trace: list[dict] = []
        self.stage = {"init": 0.0, "ascent": 0.0, "rounding": 0.0, "search": 0.0}
        self._idi_signs = None

    # -- helpers ----------------------------------------------------------
    def out_of_time(self):
        b = self.cfg.time_budget
        return b is not None and self.counter > 0 and time.perf_counter() - self.t0 >= b

    def init_vector(self, key):
        t = time.perf_counter()
        rng = self.streams.gen(INIT, *key)
        icfg = self.cfg.init
        if icfg.method is InitMethod.DUI:
            x = dui_init(self.g, rng)
        else:
            signs = None
            if icfg.fix_idi_signs:
                if self._idi_signs is None:
                    k = int(important_nodes(self.g, icfg.beta).sum())
                    self._idi_signs = self.streams.gen(INIT, -1).choice([-1.0, 1.0], size=k)
                signs = self._idi_signs
            x = idi_init(self.g, icfg.beta, rng, signs=signs)
        self.stage["init"] += time.perf_counter() - t
        return x

    def cuts(self, z):
        e = self.g.edges
        rows = max(1, int(2e7 // max(self.g.m, 1)))
        out = np.empty(len(z), dtype=np.int64)
        for s in range(0, len(z), rows):
            blk = z[s:s + rows]
            out[s:s + rows] = np.count_nonzero(blk[:, e[:, 0]] != blk[:, e[:, 1]], axis=1)
        return out

    def batch(self, mean, params: AscentParams, lifted: bool, phase: str):
        """One batch around ``mean``; updates the incumbent. Returns the batch's best cut."""
        cfg = self.cfg
        k = self.counter
        self.counter += 1
        t = time.perf_counter()
        start = gaussian_batch(mean, cfg.init.eta, cfg.batch_size, self.streams, k)
        start = scale_down(start, cfg.init.init_scale)
        self.stage["init"] += time.perf_counter() - t

        t = time.perf_counter()
        states, used = run_ascent(self.g, start, params, workers=self.workers,
                                  trace=self.ascent_trace)
        self.stage["ascent"] += time.perf_counter() - t

        t = time.perf_counter()
        z = round_lifted(states) if lifted else round_unlifted(states[:, :, 0])
        cuts = self.cuts(z)
        j = int(np.argmax(cuts))
        if cuts[j] > self.best_cut:
            self.best_cut = int(cuts[j])
            self.best_z = z[j].copy()
            self.best_at = (k, j)
        self.stage["rounding"] += time.perf_counter() - t
        self.batch_trace.append({
            "batch": k, "phase": phase, "alpha": params.alpha,
            "iterations": params.iterations, "max_iterations_used": int(used.max()),
            "batch_best": int(cuts[j]), "incumbent": self.best_cut,
        })
        return int(cuts[j])

    def incumbent_mean(self, lifted: bool):
        x = to_spins(self.best_z)
        if lifted:
            return np.repeat(x[:, None], self.cfg.lift_dim, axis=1)
        return x

    def search(self, kind: str, lifted: bool, phase: str):
        """Evolve (alpha, T) for this phase kind using one batch per candidate."""
        scfg = self.cfg.search
        t = time.perf_counter()
        idx = self.searches
        self.searches += 1
        rng = self.streams.gen(EVO, idx)
        base = self.cfg.phase_params(lifted)
        pop = sample_population(scfg, rng)

        def evaluate(c: Candidate):
            p = AscentParams(c.alpha, c.iterations, base.momentum)
            return self.batch(self.incumbent_mean(lifted), p, lifted, phase + "/search")

        def record(row):
            self.search_trace.append({"search": idx, "phase": kind, **row})

        inner = dict(self.stage)
        best = evolve(pop, evaluate, scfg.rounds, rng, trace=record)
        # evaluation batches are already counted in the other stages
        spent = sum(self.stage[s] - inner[s] for s in ("init", "ascent", "rounding"))
        self.stage["search"] += time.perf_counter() - t - spent
        self.tuned[kind] = AscentParams(best.alpha, best.iterations, base.momentum)

    def phase(self, lifted: bool, first_mean, label: str):
        """``num_batches`` batches: the first around ``first_mean``, then re-centred."""
        kind = "lifted" if lifted else "unlifted"
        scfg = self.cfg.search
        mean = first_mean
        for b in range(self.cfg.num_batches):
            if b > 0 and self.out_of_time():
                return False
            params = self.tuned.get(kind, self.cfg.phase_params(lifted))
            self.batch(mean, params, lifted, label)
            mean = self.incumbent_mean(lifted)
            if scfg is not None and (
                kind not in self.tuned
                or (scfg.rerun_every is not None and (b + 1) % scfg.rerun_every == 0)
            ):
                self.search(kind, lifted, label)
        return not self.out_of_time()

    def lifted_init(self, key):
        l = self.cfg.lift_dim
        return np.column_stack([self.init_vector(key + (c,)) for c in range(l)])

    def solution(self, algorithm):
        assert cut_value(self.g, self.best_z) == self.best_cut
        wall = time.perf_counter() - self.t0
        return CutSolution(
            assignment=self.best_z.astype(np.int8),
            cut_value=self.best_cut,
            algorithm=algorithm,
            seed=self.streams.seed,
            batch_index=self.best_at[0],
            member_index=self.best_at[1],
            wall_time=wall,
            meta={
                "batches_run": self.counter,
                "batch_trace": self.batch_trace,
                "search_trace": self.search_trace,
                "tuned": {k: [p.alpha, p.iterations] for k, p in self.tuned.items()},
                "stage_times": dict(self.stage),
            },
        )


def _streams(rng) -> Streams:
    if isinstance(rng, Streams):
        return rng
    return Streams(0 if rng is None else int(rng))


def pquco(g: Graph, cfg: SolverConfig, rng=0, *, workers: int = 1, trace=None) -> CutSolution:
    """Batched projected ascent on the relaxed objective, rounded by sign (> 0)."""
    run = _Run(g, cfg, _streams(rng), workers, trace)
    run.phase(False, run.init_vector((0,)), "quco")
    return run.solution(Algorithm.PQUCO.value)


def pluco(g: Graph, cfg: SolverConfig, rng=0, *, workers: int = 1, trace=None) -> CutSolution:
    """Batched projected ascent on the lifted objective, rounded by row sum (>= 0)."""
    if cfg.lift_dim < 2:
        raise ConfigError("pluco needs lift_dim >= 2")
    run = _Run(g, cfg, _streams(rng), workers, trace)
    run.phase(True, run.lifted_init((0,)), "luco")
    return run.solution(Algorithm.PLUCO.value)


def pdeco(g: Graph, cfg: SolverConfig, rng=0, *, workers: int = 1, trace=None) -> CutSolution:
    """Alternate unlifted and lifted phases, threading the incumbent between them."""
    if cfg.lift_dim < 2:
        raise ConfigError("pdeco needs lift_dim >= 2")
    if cfg.deco_rounds is None and cfg.time_budget is None:
        raise ConfigError("pdeco needs deco_rounds or a time budget")
    run = _Run(g, cfg, _streams(rng), workers, trace)
    r = 0
    phases = []
    while cfg.deco_rounds is None or r < cfg.deco_rounds:
        mean = run.init_vector((r, 0)) if run.best_z is None else run.incumbent_mean(False)
        before = run.best_cut
        go = run.phase(False, mean, f"quco{r}")
        phases.append({"round": r, "phase": "quco", "best": run.best_cut, "start": before})
        if not go:
            break
        mean = run.lifted_init((r, 1))
        if cfg.deco_carry is DecoCarry.INCUMBENT_COLUMN:
            mean[:, 0] = to_spins(run.best_z)
        before = run.best_cut
        go = run.phase(True, mean, f"luco{r}")
        phases.append({"round": r, "phase": "luco", "best": run.best_cut, "start": before})
        r += 1
        if not go:
            break
    sol = run.solution(Algorithm.PDECO.value)
    sol.meta["phase_trace"] = phases
    return sol


SOLVERS = {Algorithm.PQUCO: pquco, Algorithm.PLUCO: pluco, Algorithm.PDECO: pdeco}


def solve(g: Graph, cfg: SolverConfig, rng=0, *, workers: int = 1, trace=None) -> CutSolution:
    return SOLVERS[cfg.algorithm](g, cfg, rng, workers=workers, trace=trace)


def solve_per_component(g: Graph, cfg: SolverConfig, rng=0, *, workers: int = 1,
                        trace=None) -> CutSolution:
    """Solve each connected component on its own and concatenate the assignments.

    Components with fewer than two nodes are placed on side 0.
    """
    streams = _streams(rng)
    t0 = time.perf_counter()
    comps = connected_components(g)
    if len(comps) == 1 and g.m > 0:
        return solve(g, cfg, streams, workers=workers, trace=trace)
    z = np.zeros(g.n, dtype=np.int8)
    total = 0
    parts = []
    for i, nodes in enumerate(comps):
        if len(nodes) < 2:
            continue
        sol = solve(g.subgraph(nodes), cfg, streams.child(i), workers=workers, trace=trace)
        z[nodes] = sol.assignment
        total += sol.cut_value
        parts.append({"component": i, "size": len(nodes), "cut_value": sol.cut_value,
                      "batch_index": sol.batch_index, "member_index": sol.member_index,
                      **sol.meta})
    assert cut_value(g, z) == total
    return CutSolution(
        assignment=z, cut_value=total, algorithm=cfg.algorithm.value, seed=streams.seed,
        wall_time=time.perf_counter() - t0,
        meta={"components": parts, "n_components": len(comps)},
    )
