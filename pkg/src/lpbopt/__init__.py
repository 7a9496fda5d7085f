"""Learner performance based behaviour (LPB) optimizer with benchmark
suites, GA/PSO baselines, rank-sum statistics and an assignment solver."""

from .core import (
    ConfigurationError,
    FitnessOrdering,
    Individual,
    Kind,
    ObjectiveProblem,
    RunRecord,
    Sense,
    UsageError,
    derive_seed,
    make_rng,
)
from .lpb import LpbParams, run

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "FitnessOrdering",
    "Individual",
    "Kind",
    "LpbParams",
    "ObjectiveProblem",
    "RunRecord",
    "Sense",
    "UsageError",
    "derive_seed",
    "make_rng",
    "run",
]
