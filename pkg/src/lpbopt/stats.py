"""Batch summaries and the Wilcoxon rank-sum test."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .core import UsageError

ALPHA = 0.05
EXACT_LIMIT = 20


@dataclass(frozen=True)
class BatchSummary:
    n_runs: int
    mean: float
    std: float
    mean_pt_seconds: float


def summarize(finals: Sequence[float], pts: Sequence[float]) -> BatchSummary:
    """Mean, sample standard deviation (n-1) and mean processing time."""
    finals = np.asarray(finals, dtype=float)
    if finals.size < 2:
        raise UsageError(f"need at least 2 runs to summarise, got {finals.size}")
    pts = np.asarray(pts, dtype=float)
    return BatchSummary(
        n_runs=int(finals.size),
        mean=float(np.mean(finals)),
        std=float(np.std(finals, ddof=1)),
        mean_pt_seconds=float(np.mean(pts)) if pts.size else float("nan"),
    )


def midranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks; tied values share the mean of their positions."""
    values = np.asarray(values, dtype=float)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size)
    sorted_vals = values[order]
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _exact_p(ranks: np.ndarray, n_a: int, w_obs: float) -> float:
    # doubled midranks are integers, so the null distribution of the rank
    # sum can be counted exactly: counts[k, s] = #subsets of size k summing to s
    r2 = np.rint(2.0 * ranks).astype(np.int64)
    top = int(r2.sum())
    counts = np.zeros((n_a + 1, top + 1), dtype=np.int64)
    counts[0, 0] = 1
    for r in r2:
        counts[1:, r:] += counts[:-1, : top + 1 - r].copy()
    centre2 = n_a * (ranks.size + 1)  # twice the null mean
    dev2 = abs(int(round(2.0 * w_obs)) - centre2)
    sums = np.arange(top + 1)
    extreme = counts[n_a][np.abs(sums - centre2) >= dev2].sum()
    return float(extreme) / math.comb(ranks.size, n_a)


def wilcoxon_ranksum(a: Sequence[float], b: Sequence[float], method: str = "auto") -> float:
    """Two-sided Wilcoxon rank-sum p-value.

    ``method="auto"`` uses the exact null distribution of the pooled
    midranks when the combined size is at most 20 and the normal
    approximation (tie-corrected variance, continuity correction) above
    that. ``"exact"`` and ``"normal"`` force one or the other.
    """
    if method not in ("auto", "exact", "normal"):
        raise UsageError(f"unknown method {method!r}")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < 2 or b.size < 2:
        raise UsageError("each sample needs at least 2 values")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        return 1.0
    # rank the smaller sample so results are symmetric in (a, b)
    if b.size < a.size:
        a, b = b, a
        pooled = np.concatenate([a, b])
    n_a, n = a.size, pooled.size
    ranks = midranks(pooled)
    w = float(ranks[:n_a].sum())
    if method == "exact" or (method == "auto" and n <= EXACT_LIMIT):
        return min(1.0, _exact_p(ranks, n_a, w))
    n_b = n - n_a
    _, counts = np.unique(pooled, return_counts=True)
    tie = float(np.sum(counts ** 3 - counts))
    var = n_a * n_b / 12.0 * ((n + 1) - tie / (n * (n - 1)))
    dev = abs(w - n_a * (n + 1) / 2.0)
    z = max(dev - 0.5, 0.0) / math.sqrt(var)
    return min(1.0, 2.0 * _normal_sf(z))


@dataclass(frozen=True)
class SignificanceRow:
    function_id: str
    p_value: float

    @property
    def significant(self) -> bool:
        return self.p_value < ALPHA


def significance_table(results_a: Mapping[str, Sequence[float]],
                       results_b: Mapping[str, Sequence[float]]) -> list[SignificanceRow]:
    """One rank-sum p-value per function; both batches must cover the same functions."""
    if set(results_a) != set(results_b):
        missing = sorted(set(results_a) ^ set(results_b))
        raise UsageError(f"function sets differ: {missing}")
    return [SignificanceRow(fid, wilcoxon_ranksum(results_a[fid], results_b[fid])) for fid in results_a]


def write_significance_csv(rows: Sequence[SignificanceRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["function_id", "p_value", "significant"])
        for row in rows:
            writer.writerow([row.function_id, repr(row.p_value), str(row.significant).lower()])
