"""Activation dynamics and the reach set-functions.

The cascade is the deterministic linear threshold rule with a coverage
conjunct: an inactive social node activates at time t+1 when at least
`threshold` of its in-neighbors are active at time t AND some opened physical
node covers it.  Seeds behave the same way at time 0: a seed whose coverage
is closed never activates (it still spends seed budget).  Nodes with no
covering physical node at all (internally generated dummies) skip the
coverage conjunct.  Activation is progressive and synchronous, so the process
reaches a fixpoint after at most N steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._arrays import (closure_matrix, covered_mask, graph_arrays,
                      instance_arrays, social_mask)
from .backends import kernels
from .errors import ContractError
from .model import Instance, SocialGraph, Solution

__all__ = [
    "CascadeResult",
    "simulate_cascade",
    "evaluate_solution",
    "reachable_set",
    "reach_count",
    "reach_weight",
]


@dataclass(frozen=True)
class CascadeResult:
    """Outcome of one cascade: who activated, their total weight, and the
    per-time-step trace (rounds[0] is the effective seed set)."""

    activated: frozenset[str]
    total_weight: float
    rounds: tuple[frozenset[str], ...]


def simulate_cascade(instance: Instance, seeds, opened) -> CascadeResult:
    """Run the cascade from the given seed and opened sets.

    This is an evaluator, not a solver: budget compliance is not required.
    Unknown ids raise KeyError.
    """
    ia = instance_arrays(instance)
    ga = ia.graph
    seed_mask = social_mask(ga, seeds)
    covered = covered_mask(ia, opened)
    round_of = kernels().cascade_rounds(ga.out_indptr, ga.out_idx,
                                        ga.thresholds, covered, seed_mask)
    last = int(round_of.max())
    rounds = tuple(
        frozenset(ga.ids[j] for j in (round_of == t).nonzero()[0])
        for t in range(last + 1)
    ) or (frozenset(),)
    activated_mask = round_of >= 0
    result = CascadeResult(
        activated=frozenset(ga.ids[j] for j in activated_mask.nonzero()[0]),
        total_weight=kernels().masked_weight(ga.weights, activated_mask),
        rounds=rounds,
    )
    assert len(result.rounds) <= ga.n + 1, "cascade exceeded the fixpoint bound"
    return result


def evaluate_solution(instance: Instance, solution: Solution) -> CascadeResult:
    """Simulate a solver's output, first asserting budget compliance."""
    if len(solution.seeds) > instance.budgets.k_s:
        raise ContractError(
            f"solution uses {len(solution.seeds)} seeds, budget is {instance.budgets.k_s}"
        )
    if len(solution.opened) > instance.budgets.k_p:
        raise ContractError(
            f"solution opens {len(solution.opened)} physical nodes, budget is {instance.budgets.k_p}"
        )
    return simulate_cascade(instance, solution.seeds, solution.opened)


def reachable_set(graph: SocialGraph, sources) -> frozenset[str]:
    """All nodes reachable from `sources` along directed edges, including the
    sources themselves.  Plain breadth-first search, O(|V| + |E|)."""
    ga = graph_arrays(graph)
    mask = social_mask(ga, sources)
    frontier = list(mask.nonzero()[0])
    while frontier:
        nxt = []
        for i in frontier:
            for j in ga.out_idx[ga.out_indptr[i]:ga.out_indptr[i + 1]]:
                if not mask[j]:
                    mask[j] = True
                    nxt.append(j)
        frontier = nxt
    return frozenset(ga.ids[j] for j in mask.nonzero()[0])


def _reach_mask(graph: SocialGraph, sources):
    ga = graph_arrays(graph)
    mask = social_mask(ga, sources)
    if mask.any():
        mask = closure_matrix(graph)[mask].any(axis=0)
    return ga, mask


def reach_count(graph: SocialGraph, a) -> int:
    """Number of nodes reachable from the set `a`."""
    _, mask = _reach_mask(graph, a)
    return int(mask.sum())


def reach_weight(graph: SocialGraph, a) -> float:
    """Total weight reachable from the set `a` (monotone and submodular in
    `a`: adding sources never lowers it, and marginal gains shrink as the
    base set grows)."""
    ga, mask = _reach_mask(graph, a)
    return kernels().masked_weight(ga.weights, mask)
