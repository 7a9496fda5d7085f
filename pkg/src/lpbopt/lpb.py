"""Learner performance based behaviour (LPB) optimizer.

Each generation a random fraction ``dp`` of the population is sorted and
halved into a good and a bad group. Their best objectives become two
thresholds that split the whole population into bad (BP), good (GP) and
perfect (PF) tiers. ``N`` learners are admitted tier by tier, PF first, and
the admitted set is varied by crossover and mutation. Offspring and mutants
join the admitted learners to form the next population.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    ConfigurationError,
    FitnessOrdering,
    Kind,
    ObjectiveProblem,
    RunRecord,
    UsageError,
    make_rng,
    random_genes,
    round_half_up,
)
from .operators import (
    default_crossover_count,
    default_mutation_count,
    one_point_crossover_batch,
    pair_parents,
    pmx_crossover_batch,
    swap_mutation_batch,
    uniform_mutation_batch,
)


@dataclass
class LpbParams:
    population_size: int = 80
    dp: float = 0.5
    crossover_count: Optional[int] = None
    mutation_count: Optional[int] = None
    max_iterations: int = 500
    seed: int = 0
    per_gene_mutation_prob: Optional[float] = None

    def __post_init__(self) -> None:
        if self.population_size < 4:
            raise ConfigurationError(f"population_size must be >= 4, got {self.population_size}")
        if not 0.0 < self.dp <= 1.0:
            raise ConfigurationError(f"dp must lie in (0, 1], got {self.dp}")
        if self.crossover_count is None:
            self.crossover_count = default_crossover_count(self.population_size)
        if self.mutation_count is None:
            self.mutation_count = default_mutation_count(self.population_size)
        if self.crossover_count < 0 or self.crossover_count % 2:
            raise ConfigurationError(f"crossover_count must be a non-negative even number, got {self.crossover_count}")
        if self.mutation_count < 0:
            raise ConfigurationError(f"mutation_count must be non-negative, got {self.mutation_count}")
        if self.max_iterations < 1:
            raise ConfigurationError(f"max_iterations must be positive, got {self.max_iterations}")
        if self.per_gene_mutation_prob is not None and not 0.0 < self.per_gene_mutation_prob <= 1.0:
            raise ConfigurationError("per_gene_mutation_prob must lie in (0, 1]")


@dataclass
class PartitionResult:
    """Index arrays into the population for each tier, plus the thresholds.

    Tier members are listed best-first.
    """

    bad: np.ndarray
    good: np.ndarray
    perfect: np.ndarray
    threshold_bad: float
    threshold_good: float


def sample_and_split(objectives: np.ndarray, dp: float, ordering: FitnessOrdering,
                     rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``max(2, round(dp*|M|))`` learners and halve them by merit.

    Returns (good, bad) index arrays, each best-first. The odd learner goes
    to the good group.
    """
    m = len(objectives)
    if m < 2:
        raise UsageError(f"need at least 2 individuals to split, got {m}")
    size = min(m, max(2, round_half_up(dp * m)))
    sample = np.sort(rng.choice(m, size=size, replace=False))
    sample = sample[ordering.argsort(np.asarray(objectives)[sample])]
    half = math.ceil(size / 2)
    return sample[:half], sample[half:]


def partition(objectives: np.ndarray, good: np.ndarray, bad: np.ndarray,
              ordering: FitnessOrdering) -> PartitionResult:
    objectives = np.asarray(objectives, dtype=float)
    if len(good) == 0 or len(bad) == 0:
        raise UsageError("good and bad groups must both be non-empty")
    t_good = objectives[good][ordering.best_index(objectives[good])]
    t_bad = objectives[bad][ordering.best_index(objectives[bad])]
    key = ordering.key(objectives)
    k_good, k_bad = ordering.key(np.array([t_good, t_bad]))
    # "not better than t" on the ascending key scale is key >= t
    in_bad = key >= k_bad
    in_good = ~in_bad & (key >= k_good)
    in_perfect = ~in_bad & ~in_good
    order = ordering.argsort(objectives)
    return PartitionResult(
        bad=order[in_bad[order]],
        good=order[in_good[order]],
        perfect=order[in_perfect[order]],
        threshold_bad=float(t_bad),
        threshold_good=float(t_good),
    )


def staged_select(part: PartitionResult, n: int) -> np.ndarray:
    """Admit ``n`` learners: PF first, then GP, then BP, each best-first."""
    pool = np.concatenate([part.perfect, part.good, part.bad])
    if len(pool) < n:
        raise UsageError(f"cannot select {n} from a partition of {len(pool)}")
    return pool[:n]


@dataclass
class Population:
    genes: np.ndarray
    objectives: np.ndarray


@dataclass
class _Incumbent:
    genes: np.ndarray
    objective: float


def _vary(sel_genes: np.ndarray, params: LpbParams, problem: ObjectiveProblem,
          rng: np.random.Generator) -> np.ndarray:
    n = sel_genes.shape[0]
    parts = []
    if params.crossover_count:
        pairs = pair_parents(n, params.crossover_count, rng)
        a, b = sel_genes[pairs[:, 0]], sel_genes[pairs[:, 1]]
        if problem.kind is Kind.PERMUTATION:
            c1, c2 = pmx_crossover_batch(a, b, rng)
            parts += [c1, c2]
        else:
            c1, c2 = one_point_crossover_batch(a, b, rng)
            parts.append(np.clip(np.concatenate([c1, c2]), problem.lower, problem.upper))
    if params.mutation_count:
        parents = sel_genes[rng.integers(0, n, size=params.mutation_count)]
        if problem.kind is Kind.PERMUTATION:
            parts.append(swap_mutation_batch(parents, rng))
        else:
            p = params.per_gene_mutation_prob or 1.0 / problem.dim
            parts.append(uniform_mutation_batch(parents, problem.lower, problem.upper, p, rng))
    if not parts:
        return sel_genes[:0]
    return np.concatenate(parts)


def step(pop: Population, params: LpbParams, problem: ObjectiveProblem,
         rng: np.random.Generator) -> tuple[Population, int]:
    """One LPB generation.

    Returns the next population and the index of its best member.
    """
    ordering = problem.ordering
    n = params.population_size
    if len(pop.objectives) < n:
        raise UsageError(f"population of {len(pop.objectives)} is smaller than N={n}")
    good, bad = sample_and_split(pop.objectives, params.dp, ordering, rng)
    part = partition(pop.objectives, good, bad, ordering)
    chosen = staged_select(part, n)
    sel_genes = pop.genes[chosen]
    sel_obj = pop.objectives[chosen]
    new = _vary(sel_genes, params, problem, rng)
    if len(new):
        genes = np.concatenate([sel_genes, new])
        objectives = np.concatenate([sel_obj, problem.evaluate_batch(new)])
    else:
        genes, objectives = sel_genes, sel_obj
    nxt = Population(genes, objectives)
    return nxt, ordering.best_index(objectives)


def run(problem: ObjectiveProblem, params: LpbParams, rng: Optional[np.random.Generator] = None) -> RunRecord:
    """Optimize ``problem`` for ``params.max_iterations`` generations.

    Permutation problems are varied with PMX and swap mutation, real-valued
    ones with one-point crossover and uniform mutation. ``rng`` defaults to a
    generator seeded with ``params.seed``.
    """
    rng = make_rng(params.seed) if rng is None else rng
    ordering = problem.ordering
    start = time.perf_counter()
    genes = random_genes(problem, params.population_size, rng)
    pop = Population(genes, problem.evaluate_batch(genes))
    b = ordering.best_index(pop.objectives)
    best = _Incumbent(pop.genes[b].copy(), float(pop.objectives[b]))
    trace = np.empty(params.max_iterations)
    for it in range(params.max_iterations):
        pop, b = step(pop, params, problem, rng)
        if ordering.better(pop.objectives[b], best.objective):
            best = _Incumbent(pop.genes[b].copy(), float(pop.objectives[b]))
        trace[it] = best.objective
    return RunRecord(
        best_objective=best.objective,
        best_genes=best.genes,
        trace=trace,
        pt_seconds=time.perf_counter() - start,
        seed=params.seed,
        evaluations=problem.evaluations,
        function_id=problem.name,
        algorithm="lpb",
    )
