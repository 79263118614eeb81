"""Exhaustive reference solver.

Streams every exactly-``k_s`` seed subset crossed with every exactly-``k_p``
open subset in lexicographic order (seeds outer) and keeps the first strict
maximum, i.e. the lexicographically smallest optimal (seed set, open set)
pair.  Intended as the ground truth the fast solvers are checked against;
refuses search spaces beyond a soft limit unless forced.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from ._arrays import instance_arrays
from .backends import kernels
from .errors import OracleRefusal
from .model import Instance, Solution

__all__ = ["DEFAULT_LIMIT", "OracleResult", "k_subsets", "search_space_size",
           "brute_force_solve"]

DEFAULT_LIMIT = 10**8


@dataclass(frozen=True)
class OracleResult:
    """Optimal solution plus the audit trail of the search."""

    solution: Solution
    value: float
    evaluated: int


def k_subsets(items: Iterable, k: int) -> Iterator[tuple]:
    """Size-k subsets of ``items`` as tuples, in lexicographic order with
    respect to the input ordering."""
    return combinations(tuple(items), k)


def search_space_size(instance: Instance) -> int:
    """Number of (seed set, open set) pairs the exhaustive search visits."""
    return comb(instance.n, instance.budgets.k_s) * comb(instance.m, instance.budgets.k_p)


def brute_force_solve(instance: Instance, *, limit: int = DEFAULT_LIMIT,
                      force: bool = False) -> OracleResult:
    """Exact optimum by enumeration.

    Raises OracleRefusal when the search space exceeds ``limit`` and
    ``force`` is false.
    """
    total = search_space_size(instance)
    if total > limit and not force:
        raise OracleRefusal(total, limit)

    ia = instance_arrays(instance)
    ga = ia.graph
    value, seed_idx, open_idx, evaluated = kernels().oracle_search(
        ga.out_indptr, ga.out_idx, ga.thresholds, ga.weights,
        ia.covers_indptr, ia.covers_idx, ia.always_covered,
        instance.budgets.k_s, instance.budgets.k_p,
    )
    assert evaluated == total, "enumeration short-circuited"

    solution = Solution(
        seeds=tuple(ga.ids[int(i)] for i in seed_idx),
        opened=tuple(ia.phys_ids[int(p)] for p in open_idx),
        algorithm_tag="oracle",
    )
    return OracleResult(solution=solution, value=float(value), evaluated=evaluated)
