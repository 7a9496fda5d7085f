"""Shared data model: problems, individuals, ordering, bounds and seeding.

Populations inside the optimizers are held as a gene matrix plus an
objective vector; :class:`Individual` is the per-solution view used at API
boundaries and in tests.
"""

from __future__ import annotations

import enum
import zlib
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np


class ConfigurationError(ValueError):
    """Invalid parameters, bounds, ids or missing data files."""


class UsageError(ValueError):
    """A call violated an operation's preconditions (arity, encoding, sizes)."""


class Sense(str, enum.Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class Kind(str, enum.Enum):
    REAL = "real"
    PERMUTATION = "permutation"


@dataclass(frozen=True)
class FitnessOrdering:
    """Strict weak ordering over objective values for a given sense."""

    sense: Sense = Sense.MINIMIZE

    def better(self, a: float, b: float) -> bool:
        if self.sense is Sense.MINIMIZE:
            return a < b
        return a > b

    def equal(self, a: float, b: float) -> bool:
        return not self.better(a, b) and not self.better(b, a)

    def key(self, objectives: np.ndarray) -> np.ndarray:
        """Map objectives onto an ascending "smaller is better" scale."""
        objectives = np.asarray(objectives, dtype=float)
        return objectives if self.sense is Sense.MINIMIZE else -objectives

    def argsort(self, objectives: np.ndarray) -> np.ndarray:
        """Indices best-first; ties keep original index order."""
        return np.argsort(self.key(objectives), kind="stable")

    def best_index(self, objectives: np.ndarray) -> int:
        return int(np.argmin(self.key(objectives)))


MINIMIZE = FitnessOrdering(Sense.MINIMIZE)


@dataclass
class ObjectiveProblem:
    """A box-bounded (or permutation-encoded) objective.

    ``func`` maps a 2-D gene matrix of shape ``(m, dim)`` to ``m`` objective
    values. When ``shift`` is set, ``func`` receives ``x - shift``, which
    moves the optimum of the raw formula from ``x*`` to ``x* + shift``.
    """

    dim: int
    lower: np.ndarray
    upper: np.ndarray
    func: Callable[[np.ndarray], np.ndarray]
    shift: Optional[np.ndarray] = None
    sense: Sense = Sense.MINIMIZE
    known_f_min: Optional[float] = None
    kind: Kind = Kind.REAL
    name: str = ""
    evaluations: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        if int(self.dim) < 1:
            raise ConfigurationError(f"dimension must be positive, got {self.dim}")
        self.dim = int(self.dim)
        self.lower = np.broadcast_to(np.asarray(self.lower, dtype=float), (self.dim,)).copy()
        self.upper = np.broadcast_to(np.asarray(self.upper, dtype=float), (self.dim,)).copy()
        if not np.all(self.lower < self.upper):
            raise ConfigurationError(f"{self.name or 'problem'}: every lower bound must be < upper bound")
        if self.shift is not None:
            self.shift = np.broadcast_to(np.asarray(self.shift, dtype=float), (self.dim,)).copy()
        self.sense = Sense(self.sense)
        self.kind = Kind(self.kind)

    @property
    def ordering(self) -> FitnessOrdering:
        return FitnessOrdering(self.sense)

    def evaluate_batch(self, genes: np.ndarray) -> np.ndarray:
        """Evaluate every row of ``genes`` and count the evaluations."""
        genes = np.asarray(genes, dtype=float if self.kind is Kind.REAL else np.int64)
        if genes.ndim == 1:
            genes = genes[None, :]
        if genes.shape[1] != self.dim:
            raise UsageError(f"{self.name or 'problem'} expects {self.dim} genes, got {genes.shape[1]}")
        self.evaluations += genes.shape[0]
        if self.shift is not None:
            genes = genes - self.shift
        return np.asarray(self.func(genes), dtype=float).reshape(genes.shape[0])

    def __call__(self, x: Sequence[float]) -> float:
        return float(self.evaluate_batch(np.asarray(x)[None, :])[0])


@dataclass
class Individual:
    """A candidate solution and its cached objective."""

    genes: np.ndarray
    objective: float = float("nan")
    evaluated: bool = False

    def copy(self) -> "Individual":
        return Individual(self.genes.copy(), self.objective, self.evaluated)


@dataclass
class RunRecord:
    """Outcome of a single optimization run."""

    best_objective: float
    best_genes: np.ndarray
    trace: np.ndarray
    pt_seconds: float
    seed: int
    evaluations: int = 0
    function_id: str = ""
    algorithm: str = ""
    run_index: int = 0


def make_rng(seed: int | np.random.SeedSequence | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def derive_seed(master_seed: int, *keys: int | str) -> int:
    """Stable 64-bit seed for a sub-stream identified by ``keys``.

    String keys are hashed with CRC32 so the result does not depend on
    Python's per-process hash randomisation.
    """
    words = [int(master_seed) & 0xFFFFFFFFFFFFFFFF]
    for k in keys:
        words.append(zlib.crc32(k.encode("utf-8")) if isinstance(k, str) else int(k))
    state = np.random.SeedSequence(words).generate_state(1, dtype=np.uint64)
    return int(state[0])


def round_half_up(x: float) -> int:
    """Round to nearest, halves away from zero (not banker's rounding)."""
    return int(np.floor(abs(x) + 0.5) * np.sign(x))


def check_bounds(problem: ObjectiveProblem) -> None:
    if not np.all(problem.lower < problem.upper):
        raise ConfigurationError("every lower bound must be < upper bound")


def random_genes(problem: ObjectiveProblem, size: int, rng: np.random.Generator) -> np.ndarray:
    """Gene matrix of ``size`` uniformly random solutions."""
    if size < 1:
        raise ConfigurationError(f"population size must be >= 1, got {size}")
    check_bounds(problem)
    if problem.kind is Kind.PERMUTATION:
        return np.argsort(rng.random((size, problem.dim)), axis=1) + 1
    return rng.uniform(problem.lower, problem.upper, size=(size, problem.dim))


def init_population(problem: ObjectiveProblem, size: int, rng: np.random.Generator) -> list[Individual]:
    return [Individual(g) for g in random_genes(problem, size, rng)]


def clamp_to_bounds(genes: np.ndarray, problem: ObjectiveProblem) -> np.ndarray:
    return np.minimum(problem.upper, np.maximum(problem.lower, genes))


def evaluate(pop: list[Individual], problem: ObjectiveProblem) -> list[Individual]:
    """Fill in the objective of every unevaluated individual, in one batch."""
    pending = [ind for ind in pop if not ind.evaluated]
    for ind in pending:
        if np.shape(ind.genes) != (problem.dim,):
            raise UsageError(f"individual has {np.size(ind.genes)} genes, problem expects {problem.dim}")
    if pending:
        values = problem.evaluate_batch(np.stack([ind.genes for ind in pending]))
        for ind, v in zip(pending, values):
            ind.objective = float(v)
            ind.evaluated = True
    return pop


def is_permutation(genes: np.ndarray) -> bool:
    genes = np.asarray(genes)
    n = genes.shape[-1]
    return bool(np.array_equal(np.sort(genes, axis=-1), np.broadcast_to(np.arange(1, n + 1), genes.shape)))
