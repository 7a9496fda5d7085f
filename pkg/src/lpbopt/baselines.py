"""Reference optimizers for comparison runs: a generational GA and a
global-best PSO. Both return :class:`~lpbopt.core.RunRecord` traces shaped
like those of :func:`lpbopt.lpb.run`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ConfigurationError, ObjectiveProblem, RunRecord, make_rng, random_genes
from .operators import (
    default_crossover_count,
    default_mutation_count,
    one_point_crossover_batch,
    uniform_mutation_batch,
)


@dataclass
class GaParams:
    population_size: int = 80
    crossover_count: Optional[int] = None
    mutation_count: Optional[int] = None
    max_iterations: int = 500
    seed: int = 0
    tournament_size: int = 2
    per_gene_mutation_prob: Optional[float] = None

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ConfigurationError(f"population_size must be >= 2, got {self.population_size}")
        if self.crossover_count is None:
            self.crossover_count = default_crossover_count(self.population_size)
        if self.mutation_count is None:
            self.mutation_count = default_mutation_count(self.population_size)
        if self.crossover_count < 0 or self.crossover_count % 2 or self.mutation_count < 0:
            raise ConfigurationError("crossover_count must be even and non-negative; mutation_count non-negative")
        if self.max_iterations < 1 or self.tournament_size < 1:
            raise ConfigurationError("max_iterations and tournament_size must be positive")


@dataclass
class PsoParams:
    swarm_size: int = 80
    w_start: float = 0.9
    w_end: float = 0.4
    c1: float = 2.0
    c2: float = 2.0
    velocity_clamp: float = 0.1
    max_iterations: int = 500
    seed: int = 0

    def __post_init__(self) -> None:
        if self.swarm_size < 1 or self.max_iterations < 1:
            raise ConfigurationError("swarm_size and max_iterations must be positive")
        if not (0.0 <= self.w_start < 1.0 and 0.0 <= self.w_end < 1.0):
            raise ConfigurationError("inertia weights must lie in [0, 1)")
        if self.c1 < 0 or self.c2 < 0 or self.velocity_clamp <= 0:
            raise ConfigurationError("c1, c2 must be non-negative and velocity_clamp positive")


def _tournament(objectives: np.ndarray, k: int, size: int, rng: np.random.Generator) -> np.ndarray:
    entrants = rng.integers(0, len(objectives), size=(k, size))
    return entrants[np.arange(k), np.argmin(objectives[entrants], axis=1)]


def ga_run(problem: ObjectiveProblem, params: GaParams, rng: Optional[np.random.Generator] = None) -> RunRecord:
    """Generational GA with tournament selection and an elite of one.

    Each generation produces ``crossover_count`` children and
    ``mutation_count`` mutants from tournament winners. The next population
    is the elite plus a random draw of the new solutions; if there are too
    few of them, tournament winners are copied in to fill it up.
    """
    rng = make_rng(params.seed) if rng is None else rng
    start = time.perf_counter()
    n, d = params.population_size, problem.dim
    p_gene = params.per_gene_mutation_prob or 1.0 / d
    genes = random_genes(problem, n, rng)
    obj = problem.evaluate_batch(genes)
    b = int(np.argmin(obj))
    best_x, best_f = genes[b].copy(), float(obj[b])
    trace = np.empty(params.max_iterations)
    for it in range(params.max_iterations):
        parts = []
        if params.crossover_count:
            k = params.crossover_count // 2
            a = genes[_tournament(obj, k, params.tournament_size, rng)]
            c = genes[_tournament(obj, k, params.tournament_size, rng)]
            c1, c2 = one_point_crossover_batch(a, c, rng)
            parts += [c1, c2]
        if params.mutation_count:
            parents = genes[_tournament(obj, params.mutation_count, params.tournament_size, rng)]
            parts.append(uniform_mutation_batch(parents, problem.lower, problem.upper, p_gene, rng))
        if parts:
            kids = np.clip(np.concatenate(parts), problem.lower, problem.upper)
            kid_obj = problem.evaluate_batch(kids)
        else:
            kids, kid_obj = genes[:0], obj[:0]
        take = rng.permutation(len(kids))[: n - 1]
        fill = n - 1 - len(take)
        copies = _tournament(obj, fill, params.tournament_size, rng) if fill else np.empty(0, dtype=int)
        genes = np.concatenate([best_x[None, :], kids[take], genes[copies]])
        obj = np.concatenate([[best_f], kid_obj[take], obj[copies]])
        b = int(np.argmin(obj))
        if obj[b] < best_f:
            best_x, best_f = genes[b].copy(), float(obj[b])
        trace[it] = best_f
    return RunRecord(best_f, best_x, trace, time.perf_counter() - start, params.seed,
                     problem.evaluations, problem.name, "ga")


def pso_run(problem: ObjectiveProblem, params: PsoParams, rng: Optional[np.random.Generator] = None) -> RunRecord:
    """Global-best PSO with linearly decreasing inertia and velocity clamping."""
    rng = make_rng(params.seed) if rng is None else rng
    start = time.perf_counter()
    n = params.swarm_size
    lo, hi = problem.lower, problem.upper
    vmax = params.velocity_clamp * (hi - lo)
    x = random_genes(problem, n, rng)
    v = np.zeros_like(x)
    fx = problem.evaluate_batch(x)
    pbest, pbest_f = x.copy(), fx.copy()
    g = int(np.argmin(pbest_f))
    gbest, gbest_f = pbest[g].copy(), float(pbest_f[g])
    trace = np.empty(params.max_iterations)
    span = max(params.max_iterations - 1, 1)
    for it in range(params.max_iterations):
        w = params.w_start - (params.w_start - params.w_end) * it / span
        r1 = rng.random(x.shape)
        r2 = rng.random(x.shape)
        v = w * v + params.c1 * r1 * (pbest - x) + params.c2 * r2 * (gbest - x)
        v = np.clip(v, -vmax, vmax)
        x = np.clip(x + v, lo, hi)
        fx = problem.evaluate_batch(x)
        improved = fx < pbest_f
        pbest[improved] = x[improved]
        pbest_f[improved] = fx[improved]
        g = int(np.argmin(pbest_f))
        if pbest_f[g] < gbest_f:
            gbest, gbest_f = pbest[g].copy(), float(pbest_f[g])
        trace[it] = gbest_f
    return RunRecord(gbest_f, gbest, trace, time.perf_counter() - start, params.seed,
                     problem.evaluations, problem.name, "pso")
