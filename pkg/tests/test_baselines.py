import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpbopt.baselines import GaParams, PsoParams, ga_run, pso_run
from lpbopt.benchmarks import make_problem
from lpbopt.core import ConfigurationError, ObjectiveProblem


def sphere(dim=4):
    return ObjectiveProblem(dim, -5, 5, lambda x: np.sum(x * x, axis=1))


def test_ga_record_shape():
    rec = ga_run(sphere(), GaParams(population_size=20, max_iterations=15, seed=1))
    assert rec.trace.shape == (15,) and rec.trace[-1] == rec.best_objective
    assert rec.algorithm == "ga"
    assert rec.evaluations == 20 + 15 * (2 * round(0.7 * 20) + 4)


def test_ga_without_variation_stagnates():
    problem = sphere()
    rec = ga_run(problem, GaParams(population_size=10, crossover_count=0, mutation_count=0, max_iterations=20, seed=2))
    assert np.all(rec.trace == rec.trace[0])
    assert problem.evaluations == 10


def test_ga_deterministic():
    a = ga_run(sphere(), GaParams(population_size=10, max_iterations=10, seed=9))
    b = ga_run(sphere(), GaParams(population_size=10, max_iterations=10, seed=9))
    assert np.array_equal(a.trace, b.trace)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=200)
def test_ga_trace_monotone(seed):
    rec = ga_run(sphere(3), GaParams(population_size=6, max_iterations=6, seed=seed))
    assert np.all(np.diff(rec.trace) <= 0)


@pytest.mark.parametrize("kw", [dict(population_size=1), dict(crossover_count=3), dict(tournament_size=0),
                                dict(max_iterations=0)])
def test_ga_params_rejected(kw):
    with pytest.raises(ConfigurationError):
        GaParams(**kw)


def test_pso_sphere_reaches_tolerance():
    rec = pso_run(make_problem("TF1"), PsoParams(seed=0))
    assert rec.best_objective <= 1e-6


def test_pso_frozen_swarm():
    problem = sphere()
    rec = pso_run(problem, PsoParams(swarm_size=10, w_start=0.0, w_end=0.0, c1=0.0, c2=0.0,
                                     max_iterations=10, seed=4))
    assert np.all(rec.trace == rec.trace[0])
    assert rec.evaluations == 10 * 11


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=200)
def test_pso_trace_monotone_and_in_bounds(seed):
    problem = sphere(3)
    rec = pso_run(problem, PsoParams(swarm_size=8, max_iterations=8, seed=seed))
    assert np.all(np.diff(rec.trace) <= 0)
    assert np.all(np.abs(rec.best_genes) <= 5)


@pytest.mark.parametrize("kw", [dict(w_start=1.0), dict(w_end=-0.1), dict(c1=-1.0), dict(velocity_clamp=0.0),
                                dict(swarm_size=0)])
def test_pso_params_rejected(kw):
    with pytest.raises(ConfigurationError):
        PsoParams(**kw)
