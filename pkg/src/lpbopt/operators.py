"""Variation operators: one-point crossover and uniform mutation for real
vectors, PMX crossover and swap mutation for permutations.

Each operator has a single-pair form working on 1-D gene arrays and, where
the optimizers need it, a batched form working on gene matrices. Both draw
from the generator they are given and nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ConfigurationError, UsageError, is_permutation, round_half_up


@dataclass(frozen=True)
class VariationConfig:
    crossover_count: int
    mutation_count: int
    per_gene_mutation_prob: Optional[float] = None

    def __post_init__(self) -> None:
        if self.crossover_count < 0 or self.crossover_count % 2:
            raise ConfigurationError(f"crossover_count must be a non-negative even number, got {self.crossover_count}")
        if self.mutation_count < 0:
            raise ConfigurationError(f"mutation_count must be non-negative, got {self.mutation_count}")
        if self.per_gene_mutation_prob is not None and not 0.0 < self.per_gene_mutation_prob <= 1.0:
            raise ConfigurationError("per_gene_mutation_prob must lie in (0, 1]")

    @classmethod
    def for_population(cls, size: int, per_gene_mutation_prob: Optional[float] = None) -> "VariationConfig":
        return cls(default_crossover_count(size), default_mutation_count(size), per_gene_mutation_prob)


def default_crossover_count(population_size: int) -> int:
    return 2 * round_half_up(0.7 * population_size)


def default_mutation_count(population_size: int) -> int:
    return round_half_up(0.2 * population_size)


# -- real-coded --------------------------------------------------------------


def one_point_crossover(a: np.ndarray, b: np.ndarray, rng: np.random.Generator,
                        cut: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Swap the tails of ``a`` and ``b`` after ``cut`` genes.

    ``cut`` is drawn uniformly from ``1..d-1`` when not given.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    d = a.shape[0]
    if d < 2 or b.shape != a.shape:
        raise UsageError(f"one-point crossover needs two parents of equal length >= 2, got {a.shape} and {b.shape}")
    if cut is None:
        cut = int(rng.integers(1, d))
    elif not 1 <= cut <= d - 1:
        raise UsageError(f"cut point must be in 1..{d - 1}, got {cut}")
    c1 = np.concatenate([a[:cut], b[cut:]])
    c2 = np.concatenate([b[:cut], a[cut:]])
    return c1, c2


def one_point_crossover_batch(a: np.ndarray, b: np.ndarray,
                              rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise :func:`one_point_crossover` with an independent cut per row."""
    k, d = a.shape
    if d < 2:
        raise UsageError("one-point crossover needs at least 2 genes")
    cuts = rng.integers(1, d, size=k)
    head = np.arange(d)[None, :] < cuts[:, None]
    return np.where(head, a, b), np.where(head, b, a)


def _check_prob(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ConfigurationError(f"per-gene mutation probability must lie in (0, 1], got {p}")


def uniform_mutation(parent: np.ndarray, lower: np.ndarray, upper: np.ndarray, per_gene_prob: float,
                     rng: np.random.Generator) -> np.ndarray:
    """Resample each gene uniformly in its bounds with probability ``per_gene_prob``.

    At least one gene is always resampled.
    """
    return uniform_mutation_batch(np.asarray(parent, dtype=float)[None, :], lower, upper, per_gene_prob, rng)[0]


def uniform_mutation_batch(parents: np.ndarray, lower: np.ndarray, upper: np.ndarray, per_gene_prob: float,
                           rng: np.random.Generator) -> np.ndarray:
    _check_prob(per_gene_prob)
    k, d = parents.shape
    mask = rng.random((k, d)) < per_gene_prob
    forced = rng.integers(0, d, size=k)
    empty = ~mask.any(axis=1)
    mask[empty, forced[empty]] = True
    fresh = rng.uniform(lower, upper, size=(k, d))
    return np.where(mask, fresh, parents)


# -- permutations ------------------------------------------------------------


def _check_perm(p: np.ndarray) -> None:
    if p.ndim != 1 or p.shape[0] < 2 or not is_permutation(p):
        raise UsageError(f"expected a permutation of 1..n with n >= 2, got {p.tolist()}")


def _pmx_children(donor: np.ndarray, other: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    # row r of the result carries donor[r, lo:hi] in place; every other slot
    # takes other's value, chased through the segment mapping until it is free
    k, n = donor.shape
    rows = np.arange(k)[:, None]
    cols = np.arange(n)[None, :]
    segment = (cols >= lo[:, None]) & (cols < hi[:, None])
    pos_in_donor = np.empty((k, n + 1), dtype=np.int64)
    pos_in_donor[rows, donor] = cols
    taken = np.zeros((k, n + 1), dtype=bool)
    taken[rows, donor] = segment
    values = other.copy()
    for _ in range(n):
        clash = ~segment & taken[rows, values]
        if not clash.any():
            break
        values = np.where(clash, other[rows, pos_in_donor[rows, values]], values)
    return np.where(segment, donor, values)


def _pmx_cuts(k: int, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    # two distinct boundaries out of 0..n, uniformly over unordered pairs
    first = rng.integers(0, n + 1, size=k)
    second = (first + rng.integers(1, n + 1, size=k)) % (n + 1)
    return np.minimum(first, second), np.maximum(first, second)


def pmx_crossover(a: np.ndarray, b: np.ndarray, rng: np.random.Generator,
                  cuts: Optional[tuple[int, int]] = None) -> tuple[np.ndarray, np.ndarray]:
    """Partially mapped crossover (Goldberg & Lingle).

    ``cuts=(lo, hi)`` selects the 0-based half-open segment ``[lo, hi)``:
    the first child carries ``b[lo:hi]`` in place, the second ``a[lo:hi]``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    _check_perm(a)
    _check_perm(b)
    n = a.shape[0]
    if b.shape[0] != n:
        raise UsageError("PMX parents must have equal length")
    if cuts is None:
        lo, hi = _pmx_cuts(1, n, rng)
    else:
        if not 0 <= cuts[0] < cuts[1] <= n:
            raise UsageError(f"invalid PMX cut points {cuts} for n={n}")
        lo, hi = np.array([cuts[0]]), np.array([cuts[1]])
    c1 = _pmx_children(b[None, :], a[None, :], lo, hi)[0]
    c2 = _pmx_children(a[None, :], b[None, :], lo, hi)[0]
    return c1, c2


def pmx_crossover_batch(a: np.ndarray, b: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise :func:`pmx_crossover`, one random segment per pair."""
    k, n = a.shape
    if n < 2:
        raise UsageError("PMX needs permutations of length >= 2")
    lo, hi = _pmx_cuts(k, n, rng)
    return _pmx_children(b, a, lo, hi), _pmx_children(a, b, lo, hi)


def swap_mutation(parent: np.ndarray, rng: np.random.Generator,
                  positions: Optional[tuple[int, int]] = None) -> np.ndarray:
    """Exchange the values at two distinct positions (0-based)."""
    parent = np.asarray(parent)
    n = parent.shape[0]
    if n < 2:
        raise UsageError("swap mutation needs at least 2 genes")
    if positions is None:
        i, j = rng.choice(n, size=2, replace=False)
    else:
        i, j = positions
        if i == j:
            raise UsageError("swap positions must differ")
    child = parent.copy()
    child[i], child[j] = parent[j], parent[i]
    return child


def swap_mutation_batch(parents: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    k, n = parents.shape
    if n < 2:
        raise UsageError("swap mutation needs at least 2 genes")
    i = rng.integers(0, n, size=k)
    j = (i + rng.integers(1, n, size=k)) % n
    rows = np.arange(k)
    out = parents.copy()
    out[rows, i] = parents[rows, j]
    out[rows, j] = parents[rows, i]
    return out


# -- mating ------------------------------------------------------------------


def pair_parents(n_selected: int, offspring_count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``offspring_count // 2`` index pairs ``(a, b)`` with ``a != b``.

    Returns an integer array of shape ``(pairs, 2)`` indexing the selected set.
    """
    if n_selected < 2:
        raise UsageError(f"pairing needs at least 2 selected individuals, got {n_selected}")
    if offspring_count < 0 or offspring_count % 2:
        raise UsageError(f"offspring_count must be a non-negative even number, got {offspring_count}")
    k = offspring_count // 2
    first = rng.integers(0, n_selected, size=k)
    second = (first + rng.integers(1, n_selected, size=k)) % n_selected
    return np.stack([first, second], axis=1)
