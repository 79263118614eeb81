"""Command-line interface.

Subcommands: ``gen`` (seeded instance files), ``solve`` (greedy / tree DP /
exhaustive / auto), ``simulate`` (run one cascade), ``validate`` (report
every contract violation in a file), ``bench`` (oracle-vs-greedy table) and
``bench-backends`` (accelerated vs pure-numpy kernels).

Exit codes: 0 success, 1 unexpected error, 2 validation/parse failure,
3 precondition violation, 4 exhaustive-search refusal.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .approx import classify_case, greedy_seeds, solve_approx
from .bench import (CSV_COLUMNS, FAMILIES, compare_backends, run_bench,
                    write_bench_csv)
from .cascade import evaluate_solution, simulate_cascade
from .errors import SocioPhysError, ValidationError
from .generators import gen_bipartite_family, gen_random_digraph, gen_random_forest
from .model import (Budgets, check_assumptions, load_instance, save_instance,
                    save_solution, weak_components)
from .oracle import DEFAULT_LIMIT, brute_force_solve
from .treedp import _subgraph, binarize_tree, dp_tables, link_forest, solve_forest

__all__ = ["main"]


def _split_ids(raw: str) -> tuple[str, ...]:
    return tuple(part for part in (p.strip() for p in raw.split(",")) if part)


def _with_budgets(instance, args):
    if args.k_s is None and args.k_p is None:
        return instance
    budgets = Budgets(
        instance.budgets.k_s if args.k_s is None else args.k_s,
        instance.budgets.k_p if args.k_p is None else args.k_p,
    )
    return dataclasses.replace(instance, budgets=budgets)


def _cmd_gen(args) -> int:
    if args.kind == "bipartite":
        instance = gen_bipartite_family(args.row, args.seed)
    elif args.kind == "forest":
        instance = gen_random_forest(args.n, args.seed,
                                     n_components=args.components,
                                     max_out_degree=args.max_out_degree)
    else:
        instance = gen_random_digraph(args.n, args.seed,
                                      edge_prob=args.edge_prob,
                                      threshold_mode=args.threshold_mode)
    instance = _with_budgets(instance, args)
    save_instance(instance, args.out)
    print(f"wrote {args.out}: {instance.n} social nodes, {instance.m} stations, "
          f"budgets ({instance.budgets.k_s}, {instance.budgets.k_p})")
    return 0


def _print_rounds(result) -> None:
    for t, members in enumerate(result.rounds):
        print(f"  round {t}: {', '.join(sorted(members)) or '(none)'}")


def _cmd_solve(args) -> int:
    instance = load_instance(args.input)
    algorithm = args.algorithm
    if algorithm == "auto":
        profile = check_assumptions(instance)
        algorithm = ("dp" if profile.a1_unit_thresholds
                     and profile.a2_bijective_coverage
                     and profile.a4_forest_of_out_trees else "greedy")
        print(f"auto: selected {algorithm}", file=sys.stderr)

    if algorithm == "greedy":
        if args.trace:
            trace = greedy_seeds(instance)
            print(f"greedy case: {classify_case(instance, trace).name}")
            for node_id, gain in trace.picks:
                print(f"  pick {node_id} (marginal gain {gain:g})")
        solution = solve_approx(instance)
    elif algorithm == "dp":
        solution = solve_forest(instance)
        if args.dump_tables:
            _write_dp_dump(instance, args.dump_tables)
    else:
        result = brute_force_solve(instance, limit=args.limit, force=args.force)
        solution = result.solution
        if args.trace:
            print(f"exhaustive search evaluated {result.evaluated} combinations")

    outcome = evaluate_solution(instance, solution)
    if args.trace:
        _print_rounds(outcome)
    if args.output:
        save_solution(solution, args.output,
                      value=outcome.total_weight, activated=outcome.activated)
    print(f"{solution.algorithm_tag}: value={outcome.total_weight:g} "
          f"seeds=[{', '.join(solution.seeds)}] opened=[{', '.join(solution.opened)}] "
          f"activated={len(outcome.activated)}")
    return 0


def _write_dp_dump(instance, path) -> None:
    parts = [binarize_tree(_subgraph(instance.graph, comp))
             for comp in weak_components(instance.graph)]
    linked = link_forest(parts)
    table = dp_tables(linked, instance.budgets)
    payload = {
        "k_s": table.k_s,
        "k_p": table.k_p,
        "root": linked.root,
        "defined_cells": table.defined_cell_count(),
        "cells": list(table.records()),
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote DP tables ({payload['defined_cells']} defined cells) to {path}",
          file=sys.stderr)


def _cmd_simulate(args) -> int:
    instance = load_instance(args.input)
    try:
        result = simulate_cascade(instance, _split_ids(args.seeds),
                                  _split_ids(args.opened))
    except KeyError as exc:
        raise ValidationError([str(exc.args[0])]) from exc
    if args.trace:
        _print_rounds(result)
    print(f"value={result.total_weight:g} activated={len(result.activated)}: "
          f"{', '.join(sorted(result.activated)) or '(none)'}")
    return 0


def _cmd_validate(args) -> int:
    load_instance(args.input, validate=True)
    print("ok")
    return 0


def _cmd_bench(args) -> int:
    rows = run_bench(args.rows, family=args.family, seed=args.seed,
                     limit=args.limit, force=args.force)
    write_bench_csv(rows, args.out, family=args.family, seed=args.seed)
    print(" ".join(CSV_COLUMNS))
    for row in rows:
        print(f"{row.n} {row.k_s} {row.k_p} {row.oracle_seconds:.6f} "
              f"{row.approx_seconds:.6f} {row.oracle_value:g} {row.approx_value:g} "
              f"{row.ratio:.4f} {row.bound:g}")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_bench_backends(args) -> int:
    report = compare_backends(rows=tuple(int(r) for r in _split_ids(args.rows)),
                              seed=args.seed, forest_n=args.forest_n)
    print(f"numpy:  {report['numpy_seconds']:.6f} s")
    print(f"numba:  {report['numba_seconds']:.6f} s")
    print(f"speedup: {report['speedup']:.2f}x (identical outputs)")
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sociophys",
        description="Budgeted influence maximization on two-layer socio-physical networks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a seeded instance file")
    gsub = p_gen.add_subparsers(dest="kind", required=True)
    for kind in ("bipartite", "forest", "digraph"):
        pk = gsub.add_parser(kind)
        pk.add_argument("--seed", type=int, default=0)
        pk.add_argument("--out", required=True)
        pk.add_argument("--k-s", type=int, default=None, help="override the seed budget")
        pk.add_argument("--k-p", type=int, default=None, help="override the open budget")
        if kind == "bipartite":
            pk.add_argument("--row", type=int, default=0)
        else:
            pk.add_argument("--n", type=int, default=10)
        if kind == "forest":
            pk.add_argument("--components", type=int, default=None)
            pk.add_argument("--max-out-degree", type=int, default=None)
        if kind == "digraph":
            pk.add_argument("--edge-prob", type=float, default=0.3)
            pk.add_argument("--threshold-mode", choices=("unit", "general"), default="unit")
        pk.set_defaults(func=_cmd_gen)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("--algorithm", choices=("greedy", "dp", "oracle", "auto"),
                         default="auto")
    p_solve.add_argument("--input", required=True)
    p_solve.add_argument("--output", default=None, help="write a solution file here")
    p_solve.add_argument("--trace", action="store_true",
                         help="print pick/round details while solving")
    p_solve.add_argument("--force", action="store_true",
                         help="let the exhaustive search exceed its soft limit")
    p_solve.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                         help="exhaustive-search soft limit (combination count)")
    p_solve.add_argument("--dump-tables", default=None, metavar="PATH",
                         help="with --algorithm dp: write the DP tables as JSON")
    p_solve.set_defaults(func=_cmd_solve)

    p_sim = sub.add_parser("simulate", help="run one cascade")
    p_sim.add_argument("--input", required=True)
    p_sim.add_argument("--seeds", default="", help="comma-separated social ids")
    p_sim.add_argument("--opened", default="", help="comma-separated physical ids")
    p_sim.add_argument("--trace", action="store_true")
    p_sim.set_defaults(func=_cmd_simulate)

    p_val = sub.add_parser("validate", help="check an instance file")
    p_val.add_argument("--input", required=True)
    p_val.set_defaults(func=_cmd_validate)

    p_bench = sub.add_parser("bench", help="oracle vs greedy timing table")
    p_bench.add_argument("--family", choices=FAMILIES, default="bipartite_t1")
    p_bench.add_argument("--rows", type=int, default=5)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", required=True)
    p_bench.add_argument("--force", action="store_true")
    p_bench.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p_bench.set_defaults(func=_cmd_bench)

    p_bb = sub.add_parser("bench-backends", help="compare numba and numpy kernels")
    p_bb.add_argument("--rows", default="0,1", help="comma-separated family rows")
    p_bb.add_argument("--seed", type=int, default=0)
    p_bb.add_argument("--forest-n", type=int, default=16)
    p_bb.set_defaults(func=_cmd_bench_backends)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        for violation in exc.violations:
            print(violation, file=sys.stderr)
        return exc.exit_code
    except SocioPhysError as exc:
        print(exc, file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
