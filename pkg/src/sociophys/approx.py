"""Greedy seed selection, the three-regime solver, and its ratio bounds.

All of this requires unit thresholds and one-to-one coverage.  Under those
profiles a seeded-and-opened node always activates and influence spreads
along every covered edge, so the value of a seed set with unlimited opens is
exactly the reach weight — a monotone submodular function the greedy pass
maximizes.  The solver then reconciles the open budget in one of three
regimes:

- seed surplus (k_s > k_p): seed the k_p heaviest nodes and open exactly
  their physical nodes; nothing else can ever activate, and this is optimal.
- reach covered (k_p >= greedy reach size): open the whole greedy reach.
- reach capped (otherwise): open the greedy seeds, then repeatedly absorb the
  heaviest node adjacent to the activated ("black") region until k_p physical
  nodes are open; exactly k_p nodes end up active.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ._arrays import closure_matrix, graph_arrays, instance_arrays
from .backends import kernels
from .cascade import reachable_set
from .errors import ContractError
from .model import Instance, Solution, check_assumptions, require_assumptions, station_map

__all__ = [
    "E_RATIO",
    "GreedyTrace",
    "CaseTag",
    "RatioBound",
    "greedy_seeds",
    "classify_case",
    "solve_approx",
    "ratio_bound",
]

# The submodular-greedy constant e/(e-1).
E_RATIO = math.e / (math.e - 1.0)


@dataclass(frozen=True)
class GreedyTrace:
    """The greedy pass: ordered (node, marginal reach-weight gain) picks plus
    the reach statistics of the final seed set."""

    picks: tuple[tuple[str, float], ...]
    final_set: frozenset[str]
    reach_size: int
    reach_total: float


class CaseTag(Enum):
    """Which budget regime the three-case solver lands in."""

    SEED_SURPLUS = "seed_surplus"    # k_s > k_p
    REACH_COVERED = "reach_covered"  # k_p >= size of the greedy reach
    REACH_CAPPED = "reach_capped"    # k_s <= k_p < size of the greedy reach


@dataclass(frozen=True)
class RatioBound:
    """Worst-case optimal/approx ratio guarantees computed from weights.

    general_bound holds for every unit-threshold, one-to-one-coverage
    instance; bipartite_bound is the tighter two-level guarantee, present
    only when the layered profile holds (never larger than general_bound).
    """

    general_bound: float
    bipartite_bound: Optional[float]


def greedy_seeds(instance: Instance) -> GreedyTrace:
    """Pick min(k_s, N) seeds, each maximizing the marginal reach weight.

    Ties go to the larger weight, then the smaller node id.  Marginal gains
    are non-increasing (submodularity); asserted on every trace.
    """
    require_assumptions(instance, unit_thresholds=True, bijective_coverage=True)
    ga = graph_arrays(instance.graph)
    closure = closure_matrix(instance.graph)
    mw = kernels().masked_weight

    n_picks = min(instance.budgets.k_s, ga.n)
    chosen = np.zeros(ga.n, dtype=bool)
    reach = np.zeros(ga.n, dtype=bool)
    current = 0.0
    picks: list[tuple[str, float]] = []
    for _ in range(n_picks):
        best_j = -1
        best_gain = -1.0
        best_weight = -1.0
        best_value = 0.0
        for j in range(ga.n):  # ascending id order
            if chosen[j]:
                continue
            value = mw(ga.weights, reach | closure[j])
            gain = value - current
            if gain > best_gain or (gain == best_gain and ga.weights[j] > best_weight):
                best_j, best_gain, best_weight, best_value = j, gain, ga.weights[j], value
        chosen[best_j] = True
        reach |= closure[best_j]
        current = best_value
        picks.append((ga.ids[best_j], best_gain))

    for earlier, later in zip(picks, picks[1:]):
        assert later[1] <= earlier[1], "greedy marginal gains must be non-increasing"

    return GreedyTrace(
        picks=tuple(picks),
        final_set=frozenset(node_id for node_id, _ in picks),
        reach_size=int(reach.sum()),
        reach_total=current,
    )


def classify_case(instance: Instance, trace: GreedyTrace) -> CaseTag:
    """Budget regime of this instance given its greedy trace.  Exactly one
    tag applies; the reach size is never below k_s (every node reaches
    itself), which is what separates the last two regimes."""
    if instance.budgets.k_s > instance.budgets.k_p:
        return CaseTag.SEED_SURPLUS
    if instance.budgets.k_p >= trace.reach_size:
        return CaseTag.REACH_COVERED
    return CaseTag.REACH_CAPPED


def solve_approx(instance: Instance) -> Solution:
    """The three-regime approximate solver (provenance tag "greedy")."""
    require_assumptions(instance, unit_thresholds=True, bijective_coverage=True)
    stations = station_map(instance)
    assert stations is not None
    ga = graph_arrays(instance.graph)
    k_p = instance.budgets.k_p

    trace = greedy_seeds(instance)
    tag = classify_case(instance, trace)

    if tag is CaseTag.SEED_SURPLUS:
        # Only k_p nodes can ever be covered, so activate the heaviest k_p
        # directly; optimal in this regime.
        ranked = sorted(instance.graph.nodes, key=lambda nd: (-nd.weight, nd.id))
        seeds = tuple(nd.id for nd in ranked[:k_p])
        opened = tuple(stations[v] for v in seeds)
    elif tag is CaseTag.REACH_COVERED:
        seeds = tuple(trace.final_set)
        opened = tuple(stations[v] for v in reachable_set(instance.graph, seeds))
    else:
        # Reach capped: grow the black (will-activate) region one heaviest
        # frontier node at a time until exactly k_p opens are spent.
        black = np.zeros(ga.n, dtype=bool)
        for node_id in trace.final_set:
            black[ga.index[node_id]] = True
        while int(black.sum()) < k_p:
            best_j = -1
            best_weight = -1.0
            for j in range(ga.n):  # ascending id
                if black[j] or ga.weights[j] <= best_weight:
                    continue
                in_nbrs = ga.in_idx[ga.in_indptr[j]:ga.in_indptr[j + 1]]
                if black[in_nbrs].any():
                    best_j, best_weight = j, ga.weights[j]
            assert best_j >= 0, "capped regime ran out of frontier nodes before k_p opens"
            black[best_j] = True
        seeds = tuple(trace.final_set)
        opened = tuple(stations[ga.ids[j]] for j in black.nonzero()[0])

    return Solution(seeds=seeds, opened=opened, algorithm_tag="greedy")


def ratio_bound(instance: Instance) -> RatioBound:
    """Guaranteed ratio bounds for this instance's weight profile."""
    require_assumptions(instance, unit_thresholds=True, bijective_coverage=True)
    weights = [nd.weight for nd in instance.graph.nodes]
    if min(weights) <= 0:
        raise ContractError("ratio bounds need strictly positive weights")
    general = max(E_RATIO, max(weights) / min(weights))
    split = check_assumptions(instance).a3_bipartite
    bipartite = None
    if split is not None:
        bipartite = max(
            E_RATIO,
            (split.i_weight_max * split.j_weight_max)
            / (split.i_weight_min * split.j_weight_min),
        )
    return RatioBound(general_bound=general, bipartite_bound=bipartite)
