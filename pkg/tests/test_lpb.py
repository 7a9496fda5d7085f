import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpbopt.core import (
    ConfigurationError,
    FitnessOrdering,
    Kind,
    ObjectiveProblem,
    Sense,
    UsageError,
    is_permutation,
    make_rng,
)
from lpbopt.lpb import LpbParams, PartitionResult, Population, partition, run, sample_and_split, staged_select, step

MIN = FitnessOrdering(Sense.MINIMIZE)
MAX = FitnessOrdering(Sense.MAXIMIZE)


def sphere(dim=4, bound=5.0):
    return ObjectiveProblem(dim, -bound, bound, lambda x: np.sum(x * x, axis=1), name="sphere")


def perm_problem(n=6, seed=0):
    cost = make_rng(seed).integers(10, 100, size=(n, n)).astype(float)
    cols = np.arange(n)
    return ObjectiveProblem(n, 1, n, lambda p: cost[p - 1, cols].sum(axis=1), kind=Kind.PERMUTATION)


def classify_reference(objectives, t_good, t_bad):
    # three-way classification with "not better than t" read as >= t (minimisation)
    bp = [i for i, v in enumerate(objectives) if v >= t_bad]
    gp = [i for i, v in enumerate(objectives) if v < t_bad and v >= t_good]
    pf = [i for i, v in enumerate(objectives) if v < t_bad and v < t_good]
    return pf, gp, bp


# -- params --------------------------------------------------------------------

def test_params_defaults():
    p = LpbParams()
    assert (p.population_size, p.dp, p.crossover_count, p.mutation_count, p.max_iterations) == (80, 0.5, 112, 16, 500)


@pytest.mark.parametrize("kw", [dict(dp=0.0), dict(dp=1.5), dict(population_size=3), dict(crossover_count=3),
                                dict(mutation_count=-1), dict(max_iterations=0)])
def test_params_rejected(kw):
    with pytest.raises(ConfigurationError):
        LpbParams(**kw)


# -- sample and split --------------------------------------------------------------

def test_split_two_values(rng):
    good, bad = sample_and_split(np.array([7.0, 3.0]), 1.0, MIN, rng)
    assert good.tolist() == [1] and bad.tolist() == [0]


def test_split_sizes_for_table_defaults(rng):
    good, bad = sample_and_split(rng.random(80), 0.5, MIN, rng)
    assert (len(good), len(bad)) == (20, 20)
    assert len(set(good) | set(bad)) == 40


def test_split_odd_sample_goes_to_good(rng):
    good, bad = sample_and_split(rng.random(10), 0.5, MIN, rng)
    assert (len(good), len(bad)) == (3, 2)


def test_split_floor_of_two(rng):
    good, bad = sample_and_split(rng.random(10), 0.01, MIN, rng)
    assert (len(good), len(bad)) == (1, 1)


def test_split_ties_follow_index_order(rng):
    obj = np.full(8, 2.0)
    good, bad = sample_and_split(obj, 1.0, MIN, rng)
    assert good.tolist() == [0, 1, 2, 3] and bad.tolist() == [4, 5, 6, 7]
    part = partition(obj, good, bad, MIN)
    assert part.threshold_good == part.threshold_bad == 2.0


def test_split_needs_two(rng):
    with pytest.raises(UsageError):
        sample_and_split(np.array([1.0]), 1.0, MIN, rng)


@given(st.lists(st.floats(-100, 100), min_size=2, max_size=60), st.floats(0.01, 1.0), st.integers(0, 2**32 - 1))
@settings(max_examples=1000)
def test_split_good_beats_bad(values, dp, seed):
    obj = np.array(values)
    good, bad = sample_and_split(obj, dp, MIN, make_rng(seed))
    assert len(good) >= len(bad) >= 1
    assert not set(good) & set(bad)
    assert obj[good].max() <= obj[bad].min()
    assert np.all(np.diff(obj[good]) >= 0) and np.all(np.diff(obj[bad]) >= 0)


# -- partition -----------------------------------------------------------------------

def test_partition_hand_trace():
    obj = np.array([2.5, 3.0, 5.0, 7.0, 8.0])
    part = partition(obj, good=np.array([1]), bad=np.array([3]), ordering=MIN)
    assert obj[part.perfect].tolist() == [2.5]
    assert obj[part.good].tolist() == [3.0, 5.0]
    assert obj[part.bad].tolist() == [7.0, 8.0]
    assert (part.threshold_good, part.threshold_bad) == (3.0, 7.0)


def test_partition_hand_trace_maximise():
    # same population seen as GPA scores, higher is better
    obj = -np.array([2.5, 3.0, 5.0, 7.0, 8.0])
    part = partition(obj, good=np.array([1]), bad=np.array([3]), ordering=MAX)
    assert part.perfect.tolist() == [0]
    assert part.good.tolist() == [1, 2]
    assert part.bad.tolist() == [3, 4]


def test_partition_collapsed_thresholds():
    obj = np.array([1.0, 4.0, 4.0, 9.0])
    part = partition(obj, good=np.array([1]), bad=np.array([2]), ordering=MIN)
    assert part.good.size == 0
    assert part.perfect.tolist() == [0] and sorted(part.bad.tolist()) == [1, 2, 3]


def test_partition_everything_better_than_thresholds():
    # thresholds come from the two worst members; all others land in PF
    obj = np.array([1.0, 2.0, 3.0, 10.0, 11.0])
    part = partition(obj, good=np.array([3]), bad=np.array([4]), ordering=MIN)
    assert part.perfect.tolist() == [0, 1, 2]
    assert part.good.tolist() == [3] and part.bad.tolist() == [4]


def test_partition_empty_group_rejected():
    with pytest.raises(UsageError):
        partition(np.array([1.0, 2.0]), np.array([], dtype=int), np.array([1]), MIN)


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=80), st.floats(0.01, 1.0), st.integers(0, 2**32 - 1),
       st.sampled_from([MIN, MAX]))
@settings(max_examples=1000)
def test_partition_exhaustive_and_ordered(values, dp, seed, ordering):
    obj = np.array(values)
    good, bad = sample_and_split(obj, dp, ordering, make_rng(seed))
    part = partition(obj, good, bad, ordering)
    members = np.concatenate([part.perfect, part.good, part.bad])
    assert sorted(members.tolist()) == list(range(len(obj)))
    key = ordering.key(obj)
    kg, kb = ordering.key(np.array([part.threshold_good, part.threshold_bad]))
    assert np.all(key[part.perfect] < kg)
    assert np.all((key[part.good] >= kg) & (key[part.good] < kb))
    assert np.all(key[part.bad] >= kb)
    pf, gp, bp = classify_reference(key.tolist(), kg, kb)
    assert sorted(part.perfect.tolist()) == pf and sorted(part.good.tolist()) == gp and sorted(part.bad.tolist()) == bp
    for tier in (part.perfect, part.good, part.bad):
        assert np.all(np.diff(key[tier]) >= 0)


# -- staged selection ---------------------------------------------------------------------

def make_part(pf, gp, bp):
    return PartitionResult(np.array(bp), np.array(gp), np.array(pf), 0.0, 0.0)


def test_select_tier_priority():
    part = make_part([4], [2, 0], [1, 3])
    assert staged_select(part, 4).tolist() == [4, 2, 0, 1]


def test_select_single_tier():
    part = make_part([5, 1, 3, 0], [2], [4])
    assert staged_select(part, 3).tolist() == [5, 1, 3]


def test_select_full_population_is_permutation():
    part = make_part([3], [0, 2], [1, 4])
    assert sorted(staged_select(part, 5).tolist()) == [0, 1, 2, 3, 4]


def test_select_too_many():
    with pytest.raises(UsageError):
        staged_select(make_part([0], [1], []), 3)


# -- step and run --------------------------------------------------------------------------

def test_step_population_size(rng):
    problem = sphere(10, 100)
    params = LpbParams()
    genes = rng.uniform(-100, 100, (80, 10))
    pop = Population(genes, problem.evaluate_batch(genes))
    nxt, best = step(pop, params, problem, rng)
    assert nxt.genes.shape == (208, 10) and nxt.objectives.shape == (208,)
    assert nxt.objectives[best] == nxt.objectives.min()
    nxt2, _ = step(nxt, params, problem, rng)
    assert nxt2.genes.shape == (208, 10)


def test_step_without_variation_is_selection(rng):
    problem = sphere()
    params = LpbParams(population_size=10, crossover_count=0, mutation_count=0)
    genes = rng.uniform(-5, 5, (25, 4))
    pop = Population(genes, problem.evaluate_batch(genes))
    before = problem.evaluations
    nxt, _ = step(pop, params, problem, rng)
    assert len(nxt.objectives) == 10
    assert problem.evaluations == before
    assert set(map(tuple, nxt.genes)) <= set(map(tuple, genes))


def test_step_offspring_in_bounds(rng):
    problem = ObjectiveProblem(3, [-1, 0, 10], [1, 2, 20], lambda x: x.sum(axis=1))
    genes = rng.uniform(problem.lower, problem.upper, (12, 3))
    pop = Population(genes, problem.evaluate_batch(genes))
    for _ in range(20):
        pop, _ = step(pop, LpbParams(population_size=12), problem, rng)
        assert np.all((pop.genes >= problem.lower) & (pop.genes <= problem.upper))


def test_step_rejects_small_population(rng):
    problem = sphere()
    genes = rng.uniform(-5, 5, (5, 4))
    with pytest.raises(UsageError):
        step(Population(genes, problem.evaluate_batch(genes)), LpbParams(population_size=10), problem, rng)


def test_run_record_shape():
    rec = run(sphere(), LpbParams(population_size=10, max_iterations=30, seed=3))
    assert rec.trace.shape == (30,)
    assert rec.trace[-1] == rec.best_objective
    assert rec.best_objective == pytest.approx(float(np.sum(rec.best_genes ** 2)))
    assert rec.evaluations == 10 + 30 * (14 + 2)
    assert rec.algorithm == "lpb" and rec.pt_seconds >= 0


@given(st.integers(0, 2**32 - 1), st.integers(4, 20), st.floats(0.05, 1.0))
@settings(max_examples=1000)
def test_run_trace_monotone_and_elitist(seed, n, dp):
    problem = sphere(3)
    rec = run(problem, LpbParams(population_size=n, dp=dp, max_iterations=5, seed=seed))
    assert np.all(np.diff(rec.trace) <= 0)
    assert rec.trace[-1] == rec.best_objective


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=1000)
def test_run_bit_equal_reruns(seed):
    params = LpbParams(population_size=6, max_iterations=4, seed=seed)
    a = run(sphere(3), params)
    b = run(sphere(3), params)
    assert np.array_equal(a.trace, b.trace) and np.array_equal(a.best_genes, b.best_genes)


@given(st.integers(0, 2**32 - 1), st.integers(2, 9))
@settings(max_examples=1000)
def test_permutation_mode_keeps_permutations(seed, n):
    problem = perm_problem(n, seed % 7)
    rng = make_rng(seed)
    genes = np.argsort(rng.random((8, n)), axis=1) + 1
    pop = Population(genes, problem.evaluate_batch(genes))
    for _ in range(3):
        pop, _ = step(pop, LpbParams(population_size=8), problem, rng)
        assert is_permutation(pop.genes)


def test_run_maximisation():
    problem = ObjectiveProblem(3, -1, 1, lambda x: -np.sum(x * x, axis=1), sense=Sense.MAXIMIZE)
    rec = run(problem, LpbParams(population_size=20, max_iterations=50, seed=1))
    assert np.all(np.diff(rec.trace) >= 0)
    assert rec.best_objective > -0.05
