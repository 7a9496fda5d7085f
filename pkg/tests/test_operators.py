import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpbopt.core import ConfigurationError, UsageError, is_permutation, make_rng
from lpbopt.operators import (
    _pmx_cuts,
    VariationConfig,
    default_crossover_count,
    default_mutation_count,
    one_point_crossover,
    one_point_crossover_batch,
    pair_parents,
    pmx_crossover,
    pmx_crossover_batch,
    swap_mutation,
    swap_mutation_batch,
    uniform_mutation,
    uniform_mutation_batch,
)

permutations = st.integers(2, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


def pmx_reference(a, b, lo, hi):
    # textbook PMX, written independently: child gets b[lo:hi]; the rest
    # of a is copied, following the b->a mapping for conflicting values
    n = len(a)
    child = [None] * n
    child[lo:hi] = b[lo:hi]
    for i in list(range(lo)) + list(range(hi, n)):
        v = a[i]
        while v in b[lo:hi]:
            v = a[b.index(v)]
        child[i] = v
    return child


# -- counts --------------------------------------------------------------------

def test_default_counts_for_population_80():
    assert default_crossover_count(80) == 112
    assert default_mutation_count(80) == 16
    cfg = VariationConfig.for_population(80)
    assert (cfg.crossover_count, cfg.mutation_count) == (112, 16)


def test_variation_config_validation():
    with pytest.raises(ConfigurationError):
        VariationConfig(3, 1)
    with pytest.raises(ConfigurationError):
        VariationConfig(2, -1)
    with pytest.raises(ConfigurationError):
        VariationConfig(2, 1, per_gene_mutation_prob=0.0)


# -- one-point crossover -------------------------------------------------------

def test_one_point_crossover_example(rng):
    c1, c2 = one_point_crossover(np.array([1, 2, 3, 4]), np.array([5, 6, 7, 8]), rng, cut=2)
    assert c1.tolist() == [1, 2, 7, 8]
    assert c2.tolist() == [5, 6, 3, 4]


def test_one_point_crossover_identical_parents(rng):
    a = np.array([0.1, 0.2, 0.3])
    c1, c2 = one_point_crossover(a, a.copy(), rng)
    assert np.array_equal(c1, a) and np.array_equal(c2, a)


def test_one_point_crossover_needs_two_genes(rng):
    with pytest.raises(UsageError):
        one_point_crossover(np.array([1.0]), np.array([2.0]), rng)
    with pytest.raises(UsageError):
        one_point_crossover(np.arange(4.0), np.arange(4.0), rng, cut=4)


def test_one_point_cut_distribution_uniform():
    # recover the cut from the children and run a chi-square test on 1..4
    rng = make_rng(3)
    a, b = np.zeros(5), np.ones(5)
    cuts = [int(np.argmax(one_point_crossover(a, b, rng)[0] == 1)) for _ in range(10_000)]
    freq = np.bincount(cuts, minlength=5)[1:] / len(cuts)
    assert np.all(np.abs(freq - 0.25) <= 0.02)
    counts = freq * len(cuts)
    chi2 = float(np.sum((counts - 2500) ** 2 / 2500))
    assert chi2 < 16.27  # 3 dof, alpha = 0.001


def test_one_point_batch_cut_distribution():
    rng = make_rng(4)
    a, b = np.zeros((20_000, 5)), np.ones((20_000, 5))
    c1, _ = one_point_crossover_batch(a, b, rng)
    cuts = np.argmax(c1 == 1, axis=1)
    freq = np.bincount(cuts, minlength=5)[1:] / len(cuts)
    assert np.all(np.abs(freq - 0.25) <= 0.02)


@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
@settings(max_examples=1000)
def test_one_point_provenance_is_prefix_suffix(d, seed):
    rng = make_rng(seed)
    a, b = rng.random(d), rng.random(d) + 2.0  # disjoint value ranges
    c1, c2 = one_point_crossover(a, b, rng)
    from_a = c1 == a
    assert np.all(from_a | (c1 == b))
    cut = int(np.argmin(from_a))
    assert 1 <= cut <= d - 1
    assert from_a[:cut].all() and not from_a[cut:].any()
    assert np.array_equal(np.sort(np.concatenate([c1, c2])), np.sort(np.concatenate([a, b])))


# -- uniform mutation -----------------------------------------------------------

def test_full_resample_in_bounds(rng):
    lo, hi = np.full(6, -2.0), np.full(6, 3.0)
    parent = np.full(6, 10.0)  # out of range so every resampled gene is visible
    child = uniform_mutation(parent, lo, hi, 1.0, rng)
    assert np.all((child >= lo) & (child <= hi))


@pytest.mark.parametrize("p", [0.0, -0.1, 1.5])
def test_mutation_probability_validated(rng, p):
    with pytest.raises(ConfigurationError):
        uniform_mutation(np.zeros(3), np.full(3, -1.0), np.ones(3), p, rng)


@given(st.integers(1, 15), st.floats(0.001, 1.0), st.integers(0, 2**32 - 1))
@settings(max_examples=1000)
def test_mutation_changes_at_least_one_gene_and_stays_in_bounds(d, p, seed):
    rng = make_rng(seed)
    lo, hi = np.full(d, -5.0), np.full(d, 5.0)
    parent = rng.uniform(lo, hi)
    child = uniform_mutation(parent, lo, hi, p, rng)
    assert np.sum(child != parent) >= 1
    assert np.all((child >= lo) & (child <= hi))


def test_mutation_changed_gene_count_matches_closed_form():
    d, p, trials = 10, 0.1, 10_000
    parents = np.zeros((trials, d))
    out = uniform_mutation_batch(parents, np.full(d, 1.0), np.full(d, 2.0), p, make_rng(5))
    mean_changed = np.mean(np.sum(out != 0.0, axis=1))
    expected = d * p + (1 - p) ** d  # forced gene when none flips
    sd = np.std(np.sum(out != 0.0, axis=1))
    assert abs(mean_changed - expected) < 4 * sd / np.sqrt(trials)


# -- PMX ------------------------------------------------------------------------

def test_pmx_hand_trace(rng):
    a, b = np.array([1, 2, 3, 4, 5]), np.array([5, 4, 3, 2, 1])
    c1, c2 = pmx_crossover(a, b, rng, cuts=(2, 4))
    assert c1.tolist() == [1, 4, 3, 2, 5]
    assert c2.tolist() == [5, 2, 3, 4, 1]
    assert c1[2:4].tolist() == b[2:4].tolist() and c2[2:4].tolist() == a[2:4].tolist()


def test_pmx_identical_parents(rng):
    a = np.array([3, 1, 4, 2])
    for _ in range(20):
        c1, c2 = pmx_crossover(a, a.copy(), rng)
        assert np.array_equal(c1, a) and np.array_equal(c2, a)


def test_pmx_rejects_non_permutations(rng):
    with pytest.raises(UsageError):
        pmx_crossover(np.array([1, 1, 2]), np.array([1, 2, 3]), rng)
    with pytest.raises(UsageError):
        pmx_crossover(np.array([1, 2, 3]), np.array([1, 2, 3]), rng, cuts=(2, 2))


def test_pmx_matches_reference_exhaustively_for_n4():
    rng = make_rng(0)
    perms = [list(p) for p in itertools.permutations(range(1, 5))]
    for a in perms:
        for b in perms:
            for lo in range(4):
                for hi in range(lo + 1, 5):
                    c1, c2 = pmx_crossover(np.array(a), np.array(b), rng, cuts=(lo, hi))
                    assert c1.tolist() == pmx_reference(a, b, lo, hi)
                    assert c2.tolist() == pmx_reference(b, a, lo, hi)


@given(permutations, st.integers(0, 2**32 - 1))
@settings(max_examples=1000)
def test_pmx_children_are_permutations(a, seed):
    rng = make_rng(seed)
    a = np.array(a)
    b = rng.permutation(a)
    c1, c2 = pmx_crossover(a, b, rng)
    assert is_permutation(c1) and is_permutation(c2)


@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
@settings(max_examples=1000)
def test_pmx_batch_children_are_permutations(n, seed):
    rng = make_rng(seed)
    a = np.argsort(rng.random((8, n)), axis=1) + 1
    b = np.argsort(rng.random((8, n)), axis=1) + 1
    c1, c2 = pmx_crossover_batch(a, b, rng)
    assert is_permutation(c1) and is_permutation(c2)


def test_pmx_cut_pairs_uniform():
    # each of the C(6, 2) = 15 boundary pairs for n = 5 should be equally likely
    rng = make_rng(8)
    n, k = 5, 30_000
    lo, hi = _pmx_cuts(k, n, rng)
    pairs = np.bincount(lo * (n + 1) + hi, minlength=(n + 1) ** 2)
    counts = pairs[[i * (n + 1) + j for i in range(n + 1) for j in range(i + 1, n + 1)]]
    assert counts.sum() == k
    expected = k / 15
    assert float(np.sum((counts - expected) ** 2 / expected)) < 36.12  # 14 dof, alpha = 0.001


# -- swap mutation ---------------------------------------------------------------

def test_swap_example_and_involution(rng):
    p = np.array([1, 2, 3, 4])
    once = swap_mutation(p, rng, positions=(0, 2))
    assert once.tolist() == [3, 2, 1, 4]
    assert swap_mutation(once, rng, positions=(0, 2)).tolist() == p.tolist()


def test_swap_errors(rng):
    with pytest.raises(UsageError):
        swap_mutation(np.array([1]), rng)
    with pytest.raises(UsageError):
        swap_mutation(np.array([1, 2]), rng, positions=(1, 1))


@given(permutations, st.integers(0, 2**32 - 1))
@settings(max_examples=1000)
def test_swap_changes_exactly_two_positions(p, seed):
    rng = make_rng(seed)
    p = np.array(p)
    child = swap_mutation(p, rng)
    assert is_permutation(child)
    assert int(np.sum(child != p)) == 2
    batch = swap_mutation_batch(np.tile(p, (5, 1)), rng)
    assert is_permutation(batch)
    assert np.all(np.sum(batch != p, axis=1) == 2)


# -- pairing ---------------------------------------------------------------------

def test_pair_parents_forced_pair(rng):
    pairs = pair_parents(2, 2, rng)
    assert sorted(pairs[0].tolist()) == [0, 1]


def test_pair_parents_table_counts(rng):
    pairs = pair_parents(80, 112, rng)
    assert pairs.shape == (56, 2)
    assert np.all(pairs[:, 0] != pairs[:, 1])
    assert np.all((pairs >= 0) & (pairs < 80))


def test_pair_parents_zero_and_errors(rng):
    assert pair_parents(5, 0, rng).shape == (0, 2)
    with pytest.raises(UsageError):
        pair_parents(1, 2, rng)
    with pytest.raises(UsageError):
        pair_parents(5, 3, rng)


def test_operators_are_deterministic():
    a, b = np.arange(1, 9), np.arange(8, 0, -1)
    assert all(np.array_equal(x, y) for x, y in zip(pmx_crossover(a, b, make_rng(1)), pmx_crossover(a, b, make_rng(1))))
    lo, hi = np.zeros(8), np.ones(8)
    assert np.array_equal(uniform_mutation(np.zeros(8), lo, hi, 0.3, make_rng(2)),
                          uniform_mutation(np.zeros(8), lo, hi, 0.3, make_rng(2)))
