"""Batch experiments: many seeded runs of one optimizer over a set of
benchmark functions, plus CSV serialization of the results.

Every run gets its own seed, ``derive_seed(master, function_id, run_index)``,
so adding or removing functions never changes the stream of any other run.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import baselines, lpb
from .benchmarks import expand_ids, get_spec, make_problem
from .core import ConfigurationError, RunRecord, UsageError, derive_seed, make_rng
from .stats import BatchSummary, SignificanceRow, summarize, write_significance_csv

ALGORITHMS = ("lpb", "ga", "pso")

SUMMARY_FILE = "summary.csv"
RUNS_FILE = "runs.csv"
CONVERGENCE_FILE = "convergence.csv"
CONFIG_FILE = "config.json"


@dataclass
class ExperimentConfig:
    algorithm: str = "lpb"
    functions: list[str] = field(default_factory=lambda: ["TF1"])
    runs: int = 30
    iterations: int = 500
    population: int = 80
    dp: float = 0.5
    crossover_count: Optional[int] = None
    mutation_count: Optional[int] = None
    seed: int = 0
    output: str = "results"
    shifted: bool = True
    jobs: int = 1

    def __post_init__(self) -> None:
        if isinstance(self.functions, str):
            self.functions = expand_ids(self.functions)
        else:
            self.functions = [get_spec(f).id for f in self.functions]
        self.validate()

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        if not self.functions:
            raise ConfigurationError("no functions selected")
        if len(set(self.functions)) != len(self.functions):
            raise ConfigurationError("function list contains duplicates")
        for name in ("iterations", "population", "jobs"):
            if int(getattr(self, name)) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.runs < 2:
            raise ConfigurationError(f"runs must be >= 2 so a standard deviation exists, got {self.runs}")
        # build the optimizer parameters once so their checks fire before any run
        self.optimizer_params(0)

    def optimizer_params(self, seed: int):
        if self.algorithm == "lpb":
            return lpb.LpbParams(population_size=self.population, dp=self.dp,
                                 crossover_count=self.crossover_count, mutation_count=self.mutation_count,
                                 max_iterations=self.iterations, seed=seed)
        if self.algorithm == "ga":
            return baselines.GaParams(population_size=self.population, crossover_count=self.crossover_count,
                                      mutation_count=self.mutation_count, max_iterations=self.iterations,
                                      seed=seed)
        return baselines.PsoParams(swarm_size=self.population, max_iterations=self.iterations, seed=seed)

    @classmethod
    def from_mapping(cls, data: Mapping, **overrides) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")
        merged = dict(data)
        merged.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**merged)

    @classmethod
    def from_json(cls, path: str | Path, **overrides) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: invalid JSON ({exc})") from exc
        if not isinstance(data, dict):
            raise ConfigurationError(f"{path}: top level must be a JSON object")
        return cls.from_mapping(data, **overrides)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[RunRecord]
    summaries: dict[str, BatchSummary]

    def finals(self) -> dict[str, list[float]]:
        out: dict[str, list[float]] = {}
        for r in self.records:
            out.setdefault(r.function_id, []).append(r.best_objective)
        return out


def single_run(config: ExperimentConfig, function_id: str, run_index: int) -> RunRecord:
    seed = derive_seed(config.seed, function_id, run_index)
    rng = make_rng(seed)
    problem = make_problem(function_id, shifted=config.shifted, rng=rng)
    params = config.optimizer_params(seed)
    if config.algorithm == "lpb":
        record = lpb.run(problem, params, rng=rng)
    elif config.algorithm == "ga":
        record = baselines.ga_run(problem, params, rng=rng)
    else:
        record = baselines.pso_run(problem, params, rng=rng)
    record.function_id = function_id
    record.run_index = run_index
    record.seed = seed
    return record


def _single_run_packed(job: tuple[ExperimentConfig, str, int]) -> RunRecord:
    return single_run(*job)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run ``config.runs`` independent optimizations per function.

    With ``jobs > 1`` runs go to a process pool; records are returned ordered
    by (function, run index) either way.
    """
    config.validate()
    jobs = [(config, fid, i) for fid in config.functions for i in range(config.runs)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_single_run_packed, jobs, chunksize=max(1, len(jobs) // (4 * config.jobs))))
    else:
        records = [single_run(*job) for job in jobs]
    summaries = {}
    for fid in config.functions:
        mine = [r for r in records if r.function_id == fid]
        summaries[fid] = summarize([r.best_objective for r in mine], [r.pt_seconds for r in mine])
    return ExperimentResult(config, records, summaries)


# -- CSV output ---------------------------------------------------------------


def _fmt(v: float) -> str:
    return repr(float(v))


def _writer(path: str | Path):
    fh = open(path, "w", newline="", encoding="utf-8")
    return fh, csv.writer(fh, lineterminator="\n")


def emit_summary_csv(rows: Iterable[tuple[str, str, BatchSummary]], path: str | Path) -> None:
    """Rows of ``(function, algorithm, summary)`` as function,algorithm,ave,std,pt_seconds."""
    rows = list(rows)
    if not rows:
        raise UsageError("no summaries to write")
    fh, w = _writer(path)
    with fh:
        w.writerow(["function", "algorithm", "ave", "std", "pt_seconds"])
        for fid, algo, s in rows:
            w.writerow([fid, algo, _fmt(s.mean), _fmt(s.std), _fmt(s.mean_pt_seconds)])


def emit_runs_csv(records: Sequence[RunRecord], path: str | Path) -> None:
    if not records:
        raise UsageError("no run records to write")
    fh, w = _writer(path)
    with fh:
        w.writerow(["function", "algorithm", "run", "seed", "best_objective", "evaluations", "pt_seconds"])
        for r in records:
            w.writerow([r.function_id, r.algorithm, r.run_index, r.seed, _fmt(r.best_objective),
                        r.evaluations, _fmt(r.pt_seconds)])


def emit_convergence_csv(records: Sequence[RunRecord], path: str | Path) -> None:
    """One row per (run, iteration); iterations are 1-based."""
    if not records:
        raise UsageError("no run records to write")
    fh, w = _writer(path)
    with fh:
        w.writerow(["function", "algorithm", "run", "iteration", "best_objective"])
        for r in records:
            for it, value in enumerate(r.trace, start=1):
                w.writerow([r.function_id, r.algorithm, r.run_index, it, _fmt(value)])


def emit_significance_csv(rows: Sequence[SignificanceRow], path: str | Path) -> None:
    if not rows:
        raise UsageError("no significance rows to write")
    write_significance_csv(rows, path)


def write_experiment(result: ExperimentResult, out_dir: str | Path | None = None) -> Path:
    """Write config, summary, per-run and convergence CSVs into ``out_dir``."""
    out = Path(out_dir if out_dir is not None else result.config.output)
    out.mkdir(parents=True, exist_ok=True)
    algo = result.config.algorithm
    emit_summary_csv(((fid, algo, s) for fid, s in result.summaries.items()), out / SUMMARY_FILE)
    emit_runs_csv(result.records, out / RUNS_FILE)
    emit_convergence_csv(result.records, out / CONVERGENCE_FILE)
    (out / CONFIG_FILE).write_text(result.config.to_json(), encoding="utf-8")
    return out


# -- reading back -------------------------------------------------------------


def read_summary_csv(path: str | Path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [
            {"function": row["function"], "algorithm": row["algorithm"], "ave": float(row["ave"]),
             "std": float(row["std"]), "pt_seconds": float(row["pt_seconds"])}
            for row in csv.DictReader(fh)
        ]


def read_finals(results_dir: str | Path) -> dict[str, list[float]]:
    """Final best objectives per function from a results directory, in run order."""
    path = Path(results_dir) / RUNS_FILE
    out: dict[str, list[tuple[int, float]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"function", "run", "best_objective"} <= set(reader.fieldnames):
            raise ConfigurationError(f"{path}: not a runs CSV")
        for row in reader:
            out.setdefault(row["function"], []).append((int(row["run"]), float(row["best_objective"])))
    return {fid: [v for _, v in sorted(vals)] for fid, vals in out.items()}


def read_convergence_csv(path: str | Path) -> dict[tuple[str, int], np.ndarray]:
    traces: dict[tuple[str, int], list[float]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            traces.setdefault((row["function"], int(row["run"])), []).append(float(row["best_objective"]))
    return {k: np.array(v) for k, v in traces.items()}
