"""Population search over the step-size exponent and iteration count.

A candidate is a pair ``(e, T)`` meaning step size ``10**e`` run for ``T``
iterations. Each round evaluates the new candidates, keeps the better half
untouched and refills the other half with perturbed copies of survivors.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError

EXP_CLIP = (-4.0, -1.0)
EXP_NOISE = 0.2
ITER_SPREAD = 0.2


@dataclass(frozen=True)
class SearchConfig:
    t_lower: int = 3000
    t_upper: int = 10000
    e_lower: float = -4.0
    e_upper: float = -1.0
    population_size: int = 6
    rounds: int = 5
    # re-run the search before every k-th later batch; None runs it once
    rerun_every: int | None = None

    def __post_init__(self):
        if not 1 <= self.t_lower <= self.t_upper:
            raise ConfigError("need 1 <= t_lower <= t_upper")
        if not self.e_lower <= self.e_upper:
            raise ConfigError("need e_lower <= e_upper")
        if self.population_size < 2 or self.population_size % 2:
            raise ConfigError("population_size must be an even number >= 2")
        if self.rounds < 1:
            raise ConfigError("rounds must be at least 1")
        if self.rerun_every is not None and self.rerun_every < 1:
            raise ConfigError("rerun_every must be positive")
        if (self.e_lower, self.e_upper) != EXP_CLIP:
            warnings.warn(
                f"exponent bounds [{self.e_lower}, {self.e_upper}] differ from the "
                f"perturbation clip range {list(EXP_CLIP)}",
                stacklevel=3,
            )


@dataclass(frozen=True)
class Candidate:
    exponent: float
    iterations: int
    fitness: float | None = None

    @property
    def alpha(self) -> float:
        return 10.0 ** self.exponent

    def sort_key(self):
        # best fitness first, then the cheaper candidate
        f = -math.inf if self.fitness is None else self.fitness
        return (-f, self.iterations, self.exponent)


def sample_population(cfg: SearchConfig, rng: np.random.Generator) -> list[Candidate]:
    """Draw ``T`` uniformly from ``{t_lower..t_upper}`` and ``e`` from ``[e_lower, e_upper]``."""
    pop = []
    for _ in range(cfg.population_size):
        t = int(rng.integers(cfg.t_lower, cfg.t_upper, endpoint=True))
        e = float(rng.uniform(cfg.e_lower, cfg.e_upper))
        pop.append(Candidate(exponent=e, iterations=t))
    return pop


def perturb_exponent(e: float, rng: np.random.Generator | None = None, *, eps: float | None = None) -> float:
    """``clip(e + 0.2 * eps, -4, -1)`` with ``eps ~ N(0, 1)``."""
    if eps is None:
        eps = float(rng.standard_normal())
    return float(np.clip(e + EXP_NOISE * eps, *EXP_CLIP))


def perturb_iterations(t0: int, rng: np.random.Generator | None = None, *, eps: float | None = None) -> int:
    """``floor(t0 * (1 + 0.2 * (2 * eps - 1)))`` with ``eps ~ U(0, 1)``, at least 1."""
    if t0 < 1:
        raise ConfigError("iteration count must be positive")
    if eps is None:
        eps = float(rng.uniform())
    return max(1, math.floor(t0 * (1.0 + ITER_SPREAD * (2.0 * eps - 1.0))))


def evolve(pop, evaluate, rounds: int, rng: np.random.Generator, trace=None) -> Candidate:
    """Run the search and return the fittest candidate.

    ``evaluate(candidate) -> float`` is called once per candidate that has
    no fitness yet; an exception counts as fitness ``-inf``. ``trace``, when
    given, receives one dict per candidate per round.
    """
    if rounds < 1:
        raise ConfigError("rounds must be at least 1")
    pop = list(pop)
    if len(pop) < 2 or len(pop) % 2:
        raise ConfigError("population size must be an even number >= 2")
    half = len(pop) // 2
    for r in range(rounds):
        for i, c in enumerate(pop):
            if c.fitness is None:
                try:
                    f = float(evaluate(c))
                except Exception:
                    f = -math.inf
                pop[i] = replace(c, fitness=f)
        pop.sort(key=Candidate.sort_key)
        if trace is not None:
            for c in pop:
                trace({"round": r, "exponent": c.exponent, "alpha": c.alpha,
                       "iterations": c.iterations, "fitness": c.fitness})
        if r == rounds - 1:
            break
        keep = pop[:half]
        fresh = []
        for _ in range(len(pop) - half):
            parent = keep[int(rng.integers(half))]
            fresh.append(Candidate(
                exponent=perturb_exponent(parent.exponent, rng),
                iterations=perturb_iterations(parent.iterations, rng),
            ))
        pop = keep + fresh
    return pop[0]
