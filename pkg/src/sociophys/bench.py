"""Benchmark harness: exhaustive search vs the greedy approximation.

Each row runs both solvers on one instance of the growing two-sided family,
records median wall time (1 discarded warmup, median of 3 timed repeats on a
monotonic clock) and the optimal/approximate values, and checks the value
ratio against the instance's proven bound.  Rows whose search space trips the
oracle's soft limit are logged to stderr and omitted.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from time import perf_counter
from typing import Callable, Sequence

from .approx import ratio_bound, solve_approx
from .backends import use_backend
from .cascade import evaluate_solution
from .errors import ContractError, OracleRefusal
from .generators import gen_bipartite_family, gen_random_forest
from .oracle import DEFAULT_LIMIT, brute_force_solve
from .treedp import solve_forest

__all__ = ["CSV_COLUMNS", "FAMILIES", "BenchRow", "run_bench",
           "write_bench_csv", "read_bench_csv", "compare_backends"]

log = logging.getLogger("sociophys.bench")

CSV_COLUMNS = ("n", "k_s", "k_p", "oracle_seconds", "approx_seconds",
               "oracle_value", "approx_value", "ratio", "bound")
FAMILIES = ("bipartite_t1",)


@dataclass(frozen=True)
class BenchRow:
    n: int
    k_s: int
    k_p: int
    oracle_seconds: float
    approx_seconds: float
    oracle_value: float
    approx_value: float
    ratio: float
    bound: float


def _timed(fn: Callable):
    """Median of three timed calls after one discarded warmup (which also
    absorbs JIT compilation and cache priming)."""
    fn()
    samples = []
    result = None
    for _ in range(3):
        t0 = perf_counter()
        result = fn()
        samples.append(perf_counter() - t0)
    samples.sort()
    return samples[1], result


def run_bench(rows: int = 5, *, family: str = "bipartite_t1", seed: int = 0,
              limit: int = DEFAULT_LIMIT, force: bool = False) -> list[BenchRow]:
    """Run the family's first ``rows`` rows; returns the completed rows."""
    if family not in FAMILIES:
        raise ContractError(f"unknown bench family {family!r} (known: {', '.join(FAMILIES)})")

    out: list[BenchRow] = []
    for r in range(rows):
        instance = gen_bipartite_family(r, seed + r)
        b = instance.budgets
        try:
            oracle_seconds, oracle_res = _timed(
                lambda: brute_force_solve(instance, limit=limit, force=force))
        except OracleRefusal as refusal:
            log.warning("row %d (n=%d, k_s=%d, k_p=%d) skipped: %s",
                        r, instance.n, b.k_s, b.k_p, refusal)
            continue
        approx_seconds, approx_sol = _timed(lambda: solve_approx(instance))
        approx_value = evaluate_solution(instance, approx_sol).total_weight

        bounds = ratio_bound(instance)
        bound = bounds.bipartite_bound if bounds.bipartite_bound is not None else bounds.general_bound
        if oracle_res.value == 0.0 and approx_value == 0.0:
            ratio = 1.0
        else:
            ratio = oracle_res.value / approx_value
        assert 1.0 <= ratio <= bound + 1e-9, (
            f"row {r}: ratio {ratio} outside [1, {bound}]")

        out.append(BenchRow(n=instance.n, k_s=b.k_s, k_p=b.k_p,
                            oracle_seconds=oracle_seconds,
                            approx_seconds=approx_seconds,
                            oracle_value=oracle_res.value,
                            approx_value=approx_value,
                            ratio=ratio, bound=bound))
    return out


def write_bench_csv(rows: Sequence[BenchRow], path, *, family: str = "bipartite_t1",
                    seed: int = 0) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"# family={family} seed={seed} timing=median-of-3-after-warmup\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([row.n, row.k_s, row.k_p,
                             repr(row.oracle_seconds), repr(row.approx_seconds),
                             repr(row.oracle_value), repr(row.approx_value),
                             repr(row.ratio), repr(row.bound)])


def read_bench_csv(path) -> list[BenchRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(line for line in fh if not line.startswith("#"))
        return [BenchRow(n=int(rec["n"]), k_s=int(rec["k_s"]), k_p=int(rec["k_p"]),
                         oracle_seconds=float(rec["oracle_seconds"]),
                         approx_seconds=float(rec["approx_seconds"]),
                         oracle_value=float(rec["oracle_value"]),
                         approx_value=float(rec["approx_value"]),
                         ratio=float(rec["ratio"]), bound=float(rec["bound"]))
                for rec in reader]


def compare_backends(*, rows: Sequence[int] = (0, 1), seed: int = 0,
                     forest_n: int = 16) -> dict:
    """Time the same workload (exhaustive rows + one forest DP) under both
    backends and assert they produce identical values."""
    instances = [gen_bipartite_family(r, seed + r) for r in rows]
    forest = gen_random_forest(forest_n, seed, n_components=3)

    seconds: dict[str, float] = {}
    values: dict[str, tuple] = {}
    for backend in ("numpy", "numba"):
        with use_backend(backend):
            def work():
                got = [brute_force_solve(inst).value for inst in instances]
                sol = solve_forest(forest)
                got.append(evaluate_solution(forest, sol).total_weight)
                return tuple(got)
            seconds[backend], values[backend] = _timed(work)
    assert values["numpy"] == values["numba"], "backends returned different values"
    return {
        "numpy_seconds": seconds["numpy"],
        "numba_seconds": seconds["numba"],
        "speedup": seconds["numpy"] / seconds["numba"],
        "values": values["numba"],
    }
