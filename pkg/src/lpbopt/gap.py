"""Court-case assignment: n cases to n justice teams, one-to-one, minimising
total hours.

A solution is a permutation ``perm`` of 1..n where ``perm[j] = i`` gives
case ``i`` to team ``j`` (both 1-based), so its cost is
``sum_j cost[perm[j] - 1, j]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import lpb
from .core import Kind, ObjectiveProblem, RunRecord, UsageError, is_permutation, make_rng

# cases are rows, teams are columns
EXAMPLE_COSTS = np.array([
    [23, 21, 12, 30, 19],
    [30, 25, 13, 22, 21],
    [21, 23, 32, 40, 15],
    [12, 32, 40, 32, 29],
    [20, 15, 21, 27, 22],
], dtype=float)

COST_LOW, COST_HIGH = 10, 100


@dataclass
class AssignmentInstance:
    cost: np.ndarray

    def __post_init__(self) -> None:
        self.cost = np.asarray(self.cost, dtype=float)
        if self.cost.ndim != 2 or self.cost.shape[0] != self.cost.shape[1] or self.cost.shape[0] < 1:
            raise UsageError(f"cost matrix must be square, got shape {self.cost.shape}")
        if not np.all(np.isfinite(self.cost)) or np.any(self.cost < 0):
            raise UsageError("costs must be finite and non-negative")

    @property
    def n(self) -> int:
        return self.cost.shape[0]


@dataclass
class AssignmentSolution:
    perm: np.ndarray
    total_cost: float

    def assignment_matrix(self) -> np.ndarray:
        """0/1 matrix X with X[i, j] = 1 when case i+1 goes to team j+1."""
        n = len(self.perm)
        x = np.zeros((n, n), dtype=int)
        x[np.asarray(self.perm) - 1, np.arange(n)] = 1
        return x


def decode_cost(perm, inst: AssignmentInstance) -> float:
    perm = np.asarray(perm)
    if perm.shape != (inst.n,) or not is_permutation(perm):
        raise UsageError(f"expected a permutation of 1..{inst.n}, got {perm.tolist()}")
    return float(inst.cost[perm - 1, np.arange(inst.n)].sum())


def generate_instance(n: int, rng: np.random.Generator) -> AssignmentInstance:
    """Integer costs drawn uniformly from [10, 100]."""
    if n < 2:
        raise UsageError(f"instance size must be >= 2, got {n}")
    return AssignmentInstance(rng.integers(COST_LOW, COST_HIGH + 1, size=(n, n)).astype(float))


def hungarian(cost: np.ndarray) -> np.ndarray:
    """Minimum-cost perfect matching of a square matrix.

    Shortest augmenting paths with row/column potentials, O(n^3). Returns
    ``col_of_row`` (0-based).
    """
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    row_of_col = np.zeros(n + 1, dtype=int)  # 1-based; 0 = unmatched
    way = np.zeros(n + 1, dtype=int)
    for i in range(1, n + 1):
        row_of_col[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = row_of_col[j0]
            free = ~used[1:]
            reduced = cost[i0 - 1] - u[i0] - v[1:]
            better = free & (reduced < minv[1:])
            minv[1:][better] = reduced[better]
            way[1:][better] = j0
            cand = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            u[row_of_col[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if row_of_col[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            row_of_col[j0] = row_of_col[j1]
            j0 = j1
    col_of_row = np.empty(n, dtype=int)
    col_of_row[row_of_col[1:] - 1] = np.arange(n)
    return col_of_row


def solve_exact(inst: AssignmentInstance) -> AssignmentSolution:
    if inst.n > 1000:
        raise UsageError("exact solver limited to n <= 1000")
    col_of_row = hungarian(inst.cost)
    perm = np.empty(inst.n, dtype=int)
    perm[col_of_row] = np.arange(1, inst.n + 1)
    return AssignmentSolution(perm, decode_cost(perm, inst))


def as_problem(inst: AssignmentInstance) -> ObjectiveProblem:
    cols = np.arange(inst.n)
    cost = inst.cost
    return ObjectiveProblem(
        dim=inst.n,
        lower=1.0,
        upper=float(inst.n),
        func=lambda perms: cost[perms - 1, cols].sum(axis=1),
        kind=Kind.PERMUTATION,
        name=f"GAP{inst.n}",
    )


@dataclass
class GapResult:
    solution: AssignmentSolution
    record: RunRecord
    # first iteration (1-based) at which the final best cost was reached
    generations: int


def solve_lpb(inst: AssignmentInstance, params: Optional[lpb.LpbParams] = None,
              rng: Optional[np.random.Generator] = None) -> GapResult:
    """LPB with PMX crossover and swap mutation; 80 learners, 200 iterations by default."""
    params = params or lpb.LpbParams(max_iterations=200)
    record = lpb.run(as_problem(inst), params, rng=rng or make_rng(params.seed))
    record.algorithm = "lpb"
    perm = np.asarray(record.best_genes, dtype=int)
    hit = np.flatnonzero(record.trace <= record.best_objective)
    return GapResult(AssignmentSolution(perm, decode_cost(perm, inst)), record, int(hit[0]) + 1)


def read_instance(path: str | Path) -> AssignmentInstance:
    """First line ``n``, then ``n`` rows of ``n`` whitespace-separated costs."""
    tokens = Path(path).read_text(encoding="utf-8").split()
    if not tokens:
        raise UsageError(f"{path}: empty instance file")
    n = int(tokens[0])
    values = [float(t) for t in tokens[1:]]
    if len(values) != n * n:
        raise UsageError(f"{path}: expected {n * n} costs, found {len(values)}")
    return AssignmentInstance(np.array(values).reshape(n, n))


def write_instance(inst: AssignmentInstance, path: str | Path) -> None:
    def fmt(v: float) -> str:
        return str(int(v)) if float(v).is_integer() else repr(float(v))

    lines = [str(inst.n)] + [" ".join(fmt(v) for v in row) for row in inst.cost]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def solution_json(result: GapResult, optimal_cost: Optional[float] = None) -> str:
    payload = {
        "perm": [int(p) for p in result.solution.perm],
        "total_cost": result.solution.total_cost,
        "generations": result.generations,
        "pt_seconds": result.record.pt_seconds,
    }
    if optimal_cost is not None:
        payload["optimal_cost"] = optimal_cost
        payload["optimal"] = bool(result.solution.total_cost <= optimal_cost)
    return json.dumps(payload, indent=2)

