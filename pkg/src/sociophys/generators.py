"""Seeded instance generators.

All weights are drawn as integers (carried as float64), so weight totals are
exact in floating point no matter how the solvers associate their sums; the
schema itself accepts arbitrary positive reals.  Every generator returns a
canonical Instance with one-to-one station coverage and passes validation.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence, Union

from .errors import ContractError
from .model import (Budgets, Instance, PhysicalNode, SocialGraph, SocialNode,
                    validate_instance)

__all__ = ["gen_bipartite_family", "gen_random_forest", "gen_random_digraph"]

BudgetsLike = Union[Budgets, tuple, None]


def _as_budgets(budgets: BudgetsLike, n: int) -> Budgets:
    if budgets is None:
        return Budgets(max(1, n // 4), max(1, n // 2))
    if isinstance(budgets, Budgets):
        return budgets
    return Budgets(*budgets)


def _bijective_stations(social_ids: Sequence[str]) -> tuple[PhysicalNode, ...]:
    """One station per social node, 'p:'-prefixed with the same suffix."""
    return tuple(PhysicalNode(f"p:{sid.removeprefix('s:')}", (sid,))
                 for sid in social_ids)


def _finish(nodes, edges, budgets) -> Instance:
    graph = SocialGraph(tuple(nodes), tuple(edges))
    instance = Instance(graph=graph,
                        physical_nodes=_bijective_stations(graph.node_ids),
                        budgets=budgets)
    report = validate_instance(instance)
    assert not report, f"generator produced an invalid instance: {report}"
    return instance


def gen_bipartite_family(row: int, seed: int, *, base_i: int = 3,
                         start_n: int = 7, k_s0: int = 2, k_p0: int = 4,
                         weights: tuple = (5, 4, 3, 1)) -> Instance:
    """Growing two-sided benchmark family.

    Row r has n = start_n + 2r social nodes (`base_i` sources, the rest
    sinks) and budgets (k_s0 + r, k_p0 + r).  ``weights`` pins the two sides'
    extremes as (source max, source min, sink max, sink min): the first two
    sources and first two sinks carry the extremes, the rest draw integers
    inside their side's range.  Every source keeps at least one out-edge and
    every sink at least one in-edge, so the sides are exactly the
    out-degree-positive / in-degree-positive classes.
    """
    if row < 0:
        raise ContractError("family row must be non-negative")
    if base_i < 2 or start_n - base_i < 2:
        raise ContractError("both sides need at least two nodes to pin their extremes")
    src_hi, src_lo, snk_hi, snk_lo = (int(w) for w in weights)
    if not (src_hi >= src_lo >= snk_hi >= snk_lo >= 1):
        raise ContractError("side weight ranges must satisfy source-min >= sink-max >= 1")

    n = start_n + 2 * row
    rng = random.Random(seed)
    src_ids = [f"s:i{j:02d}" for j in range(base_i)]
    snk_ids = [f"s:j{j:02d}" for j in range(n - base_i)]

    src_w = [src_hi, src_lo] + [rng.randint(src_lo, src_hi) for _ in src_ids[2:]]
    snk_w = [snk_hi, snk_lo] + [rng.randint(snk_lo, snk_hi) for _ in snk_ids[2:]]

    edges = []
    for sink in snk_ids:
        for src in rng.sample(src_ids, rng.randint(1, base_i)):
            edges.append((src, sink))
    covered_srcs = {a for a, _ in edges}
    for src in src_ids:
        if src not in covered_srcs:
            edges.append((src, rng.choice(snk_ids)))

    nodes = [SocialNode(i, float(w), 1) for i, w in zip(src_ids, src_w)]
    nodes += [SocialNode(i, float(w), 1) for i, w in zip(snk_ids, snk_w)]
    return _finish(nodes, edges, Budgets(k_s0 + row, k_p0 + row))


def gen_random_forest(n: int, seed: int, *, n_components: Optional[int] = None,
                      max_out_degree: Optional[int] = None,
                      weight_range: tuple = (1, 9),
                      budgets: BudgetsLike = None) -> Instance:
    """Random forest of out-trees by uniform attachment.

    Node count is split into ``n_components`` parts (default: uniform over
    1..min(4, n)); within a part each new node hangs under a uniformly chosen
    earlier node, restricted to parents still below ``max_out_degree``.
    """
    if n < 1:
        raise ContractError("need at least one node")
    rng = random.Random(seed)
    parts = rng.randint(1, min(4, n)) if n_components is None else n_components
    if not 1 <= parts <= n:
        raise ContractError(f"cannot split {n} nodes into {parts} components")
    if max_out_degree is not None and max_out_degree < 1:
        raise ContractError("max_out_degree must be at least 1")

    cuts = sorted(rng.sample(range(1, n), parts - 1))
    bounds = [0] + cuts + [n]
    width = max(2, len(str(n - 1)))
    ids = [f"s:{i:0{width}d}" for i in range(n)]

    edges = []
    for lo, hi in zip(bounds, bounds[1:]):
        comp = ids[lo:hi]
        out_deg = {i: 0 for i in comp}
        for pos in range(1, len(comp)):
            eligible = [comp[j] for j in range(pos)
                        if max_out_degree is None or out_deg[comp[j]] < max_out_degree]
            parent = rng.choice(eligible)
            out_deg[parent] += 1
            edges.append((parent, comp[pos]))

    lo_w, hi_w = (int(w) for w in weight_range)
    nodes = [SocialNode(i, float(rng.randint(lo_w, hi_w)), 1) for i in ids]
    return _finish(nodes, edges, _as_budgets(budgets, n))


def gen_random_digraph(n: int, seed: int, *, edge_prob: float = 0.3,
                       threshold_mode: str = "unit",
                       weight_range: tuple = (1, 9),
                       budgets: BudgetsLike = None) -> Instance:
    """Random simple digraph: each ordered pair (i, j), i != j, carries an
    edge with probability ``edge_prob``.

    ``threshold_mode``: "unit" sets every threshold to 1; "general" draws
    each node's threshold uniformly from [1, max(1, in-degree)].
    """
    if n < 1:
        raise ContractError("need at least one node")
    if threshold_mode not in ("unit", "general"):
        raise ContractError(f"unknown threshold mode {threshold_mode!r}")
    rng = random.Random(seed)
    width = max(2, len(str(n - 1)))
    ids = [f"s:{i:0{width}d}" for i in range(n)]

    edges = [(ids[i], ids[j])
             for i in range(n) for j in range(n)
             if i != j and rng.random() < edge_prob]

    in_deg = {i: 0 for i in ids}
    for _, b in edges:
        in_deg[b] += 1
    lo_w, hi_w = (int(w) for w in weight_range)
    nodes = []
    for i in ids:
        theta = 1 if threshold_mode == "unit" else rng.randint(1, max(1, in_deg[i]))
        nodes.append(SocialNode(i, float(rng.randint(lo_w, hi_w)), theta))
    return _finish(nodes, edges, _as_budgets(budgets, n))
