"""Command-line entry point: ``lpbopt {list,bench,gap,stats,selftest}``.

Exit codes: 0 success, 1 configuration or usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import gap, harness, lpb
from .benchmarks import registry, self_test
from .core import ConfigurationError, UsageError, derive_seed, make_rng
from .stats import significance_table

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; report them as usage errors instead
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lpbopt", description="LPB optimizer, benchmarks and experiment runner")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    sub.add_parser("list", help="print every registered benchmark function")

    b = sub.add_parser("bench", help="run a batch experiment")
    b.add_argument("--config", help="JSON experiment config; flags override its values")
    b.add_argument("--algo", dest="algorithm", choices=harness.ALGORITHMS)
    b.add_argument("--functions", help="e.g. TF1..TF19,CEC04 or classical, cec, composite, all")
    b.add_argument("--runs", type=int)
    b.add_argument("--iterations", type=int)
    b.add_argument("--population", type=int)
    b.add_argument("--dp", type=float)
    b.add_argument("--crossover-count", type=int)
    b.add_argument("--mutation-count", type=int)
    b.add_argument("--seed", type=int)
    b.add_argument("--out", dest="output")
    b.add_argument("--jobs", type=int)
    b.add_argument("--no-shift", dest="shifted", action="store_const", const=False)

    g = sub.add_parser("gap", help="solve a case-to-team assignment instance")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--size", type=int, help="generate a random n x n instance")
    src.add_argument("--instance", help="instance file: n, then n rows of n costs")
    g.add_argument("--iterations", type=int, default=200)
    g.add_argument("--population", type=int, default=80)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="gap_results")

    s = sub.add_parser("stats", help="rank-sum significance table for two results directories")
    s.add_argument("results_a")
    s.add_argument("results_b")
    s.add_argument("--out", help="CSV path (default: print to stdout)")

    sub.add_parser("selftest", help="evaluate every function at its known optimum")
    return p


def _cmd_list(_: argparse.Namespace) -> int:
    specs = registry()
    print("id,name,family,dim,lower,upper,f_min")
    for s in specs:
        lo, hi = s.range
        print(f"{s.id},{s.name},{s.family},{s.dim},{lo:g},{hi:g},{s.f_min!r}")
    print(f"# {len(specs)} functions", file=sys.stderr)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    overrides = {k: getattr(args, k) for k in (
        "algorithm", "functions", "runs", "iterations", "population", "dp", "crossover_count",
        "mutation_count", "seed", "output", "jobs", "shifted")}
    if args.config:
        config = harness.ExperimentConfig.from_json(args.config, **overrides)
    else:
        config = harness.ExperimentConfig.from_mapping({}, **overrides)
    result = harness.run_experiment(config)
    out = harness.write_experiment(result)
    for fid, s in result.summaries.items():
        print(f"{fid:6s} {config.algorithm:4s} ave={s.mean:.6g} std={s.std:.6g} pt={s.mean_pt_seconds:.3f}s")
    print(f"results written to {out}", file=sys.stderr)
    return EXIT_OK


def _cmd_gap(args: argparse.Namespace) -> int:
    out = Path(args.out)
    if args.instance:
        inst = gap.read_instance(args.instance)
    else:
        inst = gap.generate_instance(args.size, make_rng(derive_seed(args.seed, "instance", args.size)))
    params = lpb.LpbParams(population_size=args.population, max_iterations=args.iterations, seed=args.seed)
    result = gap.solve_lpb(inst, params, rng=make_rng(derive_seed(args.seed, "gap")))
    optimum = gap.solve_exact(inst).total_cost
    out.mkdir(parents=True, exist_ok=True)
    if not args.instance:
        gap.write_instance(inst, out / "instance.txt")
    payload = gap.solution_json(result, optimal_cost=optimum)
    (out / "solution.json").write_text(payload + "\n", encoding="utf-8")
    with open(out / "convergence.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iteration", "best_objective"])
        for it, v in enumerate(result.record.trace, start=1):
            w.writerow([it, repr(float(v))])
    print(payload)
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    a = harness.read_finals(args.results_a)
    b = harness.read_finals(args.results_b)
    rows = significance_table(a, b)
    if args.out:
        harness.emit_significance_csv(rows, args.out)
    print("function_id,p_value,significant")
    for r in rows:
        print(f"{r.function_id},{r.p_value!r},{str(r.significant).lower()}")
    return EXIT_OK


def _cmd_selftest(_: argparse.Namespace) -> int:
    results = self_test()
    for r in results:
        print(f"{r.id:6s} value={r.value!r} f_min={r.f_min!r} {'ok' if r.ok else 'FAIL'}")
    failed = [r.id for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} passed", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_CONFIG


_COMMANDS = {
    "list": _cmd_list,
    "bench": _cmd_bench,
    "gap": _cmd_gap,
    "stats": _cmd_stats,
    "selftest": _cmd_selftest,
}


def cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ConfigurationError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(cli())
