"""Exact solver for forests of out-trees (unit thresholds, one-to-one coverage).

Pipeline: split the graph into weak components (each must be an out-tree),
binarize every tree by threading >2-child nodes through zero-weight dummy
chains, link multiple components under a dummy root the same way, then run a
bottom-up dynamic program over (node, seeds-left, opens-left) cells and walk
its choice records back into a concrete solution.

Per node v and budget pair (k, l) the DP tracks three states:

- inactive: v stays off; children may still be seeded (their subtrees run on
  their own budgets).
- relay: v comes on through its parent.  A non-dummy relay must open its own
  physical node (one open) and can only happen while the parent itself spends
  budget, so relay cells exist only below the budget caps; a dummy relay
  costs nothing and cannot happen at the root (no parent).
- seeded: v is seeded directly, spending one seed and one open.

`best` selects the maximum of the three (ties prefer the active states,
relay before seeded).  Children under an inactive or seeded/relay parent
split the remaining budget; the recorded split is the first-child share with
ties broken toward the lexicographically smallest (k1, l1).  The second
child always receives the full remainder, which is value-correct because
every consumed child table is monotone non-decreasing over the queried
cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from ._arrays import graph_arrays
from .backends import kernels
from .errors import ContractError
from .model import (Budgets, Instance, SocialGraph, SocialNode, Solution,
                    require_assumptions, station_map, weak_components)

__all__ = [
    "BinarizedTree",
    "DpTable",
    "binarize_tree",
    "link_forest",
    "contract_dummies",
    "dp_tables",
    "dp_extract",
    "solve_forest",
    "solve_forest_full_open",
    "solve_forest_uniform",
]

VARIANTS = ("best", "active", "inactive", "relay", "seeded")


@dataclass(frozen=True, eq=False)
class BinarizedTree:
    """An out-tree with max out-degree 2, plus the dummy bookkeeping needed
    to map solutions back onto the original forest."""

    tree: SocialGraph
    root: str
    dummy_ids: frozenset[str]
    origin_map: Mapping[str, str]  # non-dummy binarized id -> original id
    leaf_ids: frozenset[str]


# ---------------------------------------------------------------------------
# Binarization and linking
# ---------------------------------------------------------------------------

def _children_of(graph: SocialGraph) -> dict[str, list[str]]:
    children: dict[str, list[str]] = {nd.id: [] for nd in graph.nodes}
    for a, b in graph.edges:  # canonical edge order keeps children ascending
        children[a].append(b)
    return children


def _in_degrees_of(graph: SocialGraph) -> dict[str, int]:
    deg = {nd.id: 0 for nd in graph.nodes}
    for _, b in graph.edges:
        deg[b] += 1
    return deg


def _single_tree_root(tree: SocialGraph) -> str:
    in_deg = _in_degrees_of(tree)
    roots = [v for v, d in in_deg.items() if d == 0]
    ok = (
        len(roots) == 1
        and all(d <= 1 for d in in_deg.values())
        and len(tree.edges) == tree.n - 1
        and len(weak_components(tree)) == 1
    )
    if not ok:
        raise ContractError("input is not a single out-tree")
    return roots[0]


def _dummy_allocator(taken: set[str], prefix: str):
    counter = 0

    def alloc() -> str:
        nonlocal counter
        while True:
            candidate = f"d:{prefix}:{counter}"
            counter += 1
            if candidate not in taken:
                taken.add(candidate)
                return candidate

    return alloc


def _attach_chain(children: dict[str, list[str]], node: str,
                  members: list[str], alloc) -> list[str]:
    """Hang `members` (ascending id) below `node` through a <=2-ary dummy
    chain: keep attaching the smallest member plus a fresh dummy, descend
    into the dummy, until two members remain."""
    created: list[str] = []
    queue = list(members)
    j = node
    while len(queue) > 2:
        m = queue.pop(0)
        d = alloc()
        created.append(d)
        children[j] = [m, d]
        children[d] = []
        j = d
    children[j] = list(queue)
    return created


def binarize_tree(tree: SocialGraph) -> BinarizedTree:
    """Rewrite a single out-tree so no node keeps more than two children.

    Every node with c > 2 children is expanded through c - 2 zero-weight
    dummies; contracting the dummies recovers the input exactly.
    """
    root = _single_tree_root(tree)
    children = _children_of(tree)
    taken = set(children)
    alloc = _dummy_allocator(taken, prefix=root)
    dummies: list[str] = []
    for node_id in tree.node_ids:  # ascending; new dummies never exceed 2
        if len(children[node_id]) > 2:
            dummies.extend(_attach_chain(children, node_id, children[node_id], alloc))

    nodes = tuple(tree.nodes) + tuple(SocialNode(d, 0.0, 1) for d in dummies)
    edges = tuple((p, c) for p, kids in children.items() for c in kids)
    out = BinarizedTree(
        tree=SocialGraph(nodes, edges),
        root=root,
        dummy_ids=frozenset(dummies),
        origin_map={nd.id: nd.id for nd in tree.nodes},
        leaf_ids=frozenset(v for v, kids in children.items() if not kids),
    )
    assert all(len(kids) <= 2 for kids in children.values())
    assert not (out.leaf_ids & out.dummy_ids), "dummies always receive children"
    return out


def link_forest(parts: Sequence[BinarizedTree]) -> BinarizedTree:
    """Join binarized components into one tree under a zero-weight dummy
    root (chained exactly like binarization when there are more than two).
    A single component passes through unchanged."""
    if not parts:
        raise ContractError("cannot link an empty forest")
    if len(parts) == 1:
        return parts[0]

    all_ids: set[str] = set()
    for part in parts:
        for node_id in part.tree.node_ids:
            if node_id in all_ids:
                raise ContractError(f"id {node_id} appears in more than one component")
            all_ids.add(node_id)

    children: dict[str, list[str]] = {}
    for part in parts:
        children.update(_children_of(part.tree))
    alloc = _dummy_allocator(all_ids, prefix="forest")
    root = alloc()
    children[root] = []
    chain = _attach_chain(children, root, sorted(p.root for p in parts), alloc)
    dummies = [root] + chain

    nodes: list[SocialNode] = []
    origin: dict[str, str] = {}
    leaves: set[str] = set()
    for part in parts:
        nodes.extend(part.tree.nodes)
        origin.update(part.origin_map)
        leaves |= part.leaf_ids
    nodes.extend(SocialNode(d, 0.0, 1) for d in dummies)
    edges = tuple((p, c) for p, kids in children.items() for c in kids)
    return BinarizedTree(
        tree=SocialGraph(tuple(nodes), edges),
        root=root,
        dummy_ids=frozenset(dummies) | frozenset().union(*(p.dummy_ids for p in parts)),
        origin_map=origin,
        leaf_ids=frozenset(leaves),
    )


def contract_dummies(binarized: BinarizedTree) -> SocialGraph:
    """Splice every dummy out (children onto the nearest non-dummy ancestor),
    recovering the original forest."""
    parent: dict[str, str] = {}
    for a, b in binarized.tree.edges:
        parent[b] = a
    keep = [nd for nd in binarized.tree.nodes if nd.id not in binarized.dummy_ids]
    edges = []
    for nd in keep:
        p = parent.get(nd.id)
        while p is not None and p in binarized.dummy_ids:
            p = parent.get(p)
        if p is not None:
            edges.append((p, nd.id))
    return SocialGraph(tuple(keep), tuple(edges))


# ---------------------------------------------------------------------------
# The dynamic program
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DpTable:
    """Value tables over (node, seeds-used, opens-used) with choice records.

    Undefined cells hold -inf; `value` returns None for them.  The recorded
    split is the first child's budget share; the second child's share is the
    full remainder under the variant's own cap.
    """

    node_ids: tuple[str, ...]
    index: Mapping[str, int]
    root_index: int
    k_s: int
    k_p: int
    is_dummy: np.ndarray
    child1: np.ndarray
    child2: np.ndarray
    best: np.ndarray
    inactive: np.ndarray
    relay: np.ndarray
    seeded: np.ndarray
    split_inactive: np.ndarray
    split_relay: np.ndarray
    split_seeded: np.ndarray

    def _table(self, variant: str) -> np.ndarray:
        if variant == "active":
            return np.maximum(self.relay, self.seeded)
        return {"best": self.best, "inactive": self.inactive,
                "relay": self.relay, "seeded": self.seeded}[variant]

    def value(self, node_id: str, k: int, l: int, variant: str = "best") -> Optional[float]:
        cell = float(self._table(variant)[self.index[node_id], k, l])
        return cell if np.isfinite(cell) else None

    def _caps(self, variant: str, v: int, k: int, l: int) -> tuple[int, int]:
        if variant == "inactive":
            return k, l
        if variant == "relay":
            return (k, l) if self.is_dummy[v] else (k, l - 1)
        if variant == "seeded":
            return k - 1, l - 1
        raise ContractError(f"variant {variant!r} records no budget split")

    def split_of(self, node_id: str, k: int, l: int, variant: str) -> Optional[tuple[int, int, int, int]]:
        """(k1, l1, k2, l2) of the winning child split, or None for base cells."""
        v = self.index[node_id]
        arrays = {"inactive": self.split_inactive, "relay": self.split_relay,
                  "seeded": self.split_seeded}
        if variant not in arrays:
            raise ContractError(f"variant {variant!r} records no budget split")
        stored = arrays[variant][v, k, l]
        if stored[0] < 0:
            return None
        cap_k, cap_l = self._caps(variant, v, k, l)
        k1, l1 = int(stored[0]), int(stored[1])
        return k1, l1, cap_k - k1, cap_l - l1

    def defined_cell_count(self) -> int:
        """Defined cells across the five variants (best/active/inactive/
        relay/seeded); by construction at most 5 per (node, k, l)."""
        return int(sum(np.isfinite(self._table(var)).sum() for var in VARIANTS))

    def records(self) -> Iterator[dict]:
        """One JSON-ready record per defined cell (debugging dump)."""
        for var in VARIANTS:
            table = self._table(var)
            for v, k, l in zip(*np.isfinite(table).nonzero()):
                record = {
                    "node": self.node_ids[v],
                    "k": int(k),
                    "l": int(l),
                    "variant": var,
                    "value": float(table[v, k, l]),
                }
                if var in ("inactive", "relay", "seeded"):
                    split = self.split_of(self.node_ids[v], int(k), int(l), var)
                    if split is not None:
                        record["split"] = list(split)
                yield record


def dp_tables(g_prime: BinarizedTree, budgets: Budgets) -> DpTable:
    """Fill the DP bottom-up (children strictly before parents)."""
    tree = g_prime.tree
    ids = tree.node_ids
    index = {node_id: pos for pos, node_id in enumerate(ids)}
    n = len(ids)

    children = _children_of(tree)
    child1 = np.full(n, -1, dtype=np.int32)
    child2 = np.full(n, -1, dtype=np.int32)
    for node_id, kids in children.items():
        if len(kids) > 2:
            raise ContractError(f"node {node_id} has {len(kids)} children; binarize first")
        if kids:
            child1[index[node_id]] = index[kids[0]]
        if len(kids) == 2:
            child2[index[node_id]] = index[kids[1]]

    weights = np.array([nd.weight for nd in tree.nodes], dtype=np.float64)
    is_dummy = np.array([nd.id in g_prime.dummy_ids for nd in tree.nodes], dtype=bool)
    root_index = index[g_prime.root]

    # bottom-up order: reverse of a root-first traversal
    order: list[int] = []
    queue = [root_index]
    while queue:
        v = queue.pop()
        order.append(v)
        for c in (child1[v], child2[v]):
            if c >= 0:
                queue.append(int(c))
    order = np.array(order[::-1], dtype=np.int32)

    shape = (n, budgets.k_s + 1, budgets.k_p + 1)
    best = np.full(shape, -np.inf)
    inactive = np.full(shape, -np.inf)
    relay = np.full(shape, -np.inf)
    seeded = np.full(shape, -np.inf)
    split_inactive = np.full(shape + (2,), -1, dtype=np.int16)
    split_relay = np.full(shape + (2,), -1, dtype=np.int16)
    split_seeded = np.full(shape + (2,), -1, dtype=np.int16)

    kernels().dp_fill(order, child1, child2, weights, is_dummy, root_index,
                      best, inactive, relay, seeded,
                      split_inactive, split_relay, split_seeded)

    return DpTable(
        node_ids=ids, index=index, root_index=root_index,
        k_s=budgets.k_s, k_p=budgets.k_p,
        is_dummy=is_dummy, child1=child1, child2=child2,
        best=best, inactive=inactive, relay=relay, seeded=seeded,
        split_inactive=split_inactive, split_relay=split_relay,
        split_seeded=split_seeded,
    )


def dp_extract(table: DpTable, g_prime: BinarizedTree, budgets: Budgets,
               stations: Optional[Mapping[str, str]] = None) -> Solution:
    """Walk the choice records from the root cell into a Solution.

    `stations` maps original social ids to their covering physical ids (the
    one-to-one coverage of the instance being solved); it is how opened
    social choices become opened physical ids.
    """
    if stations is None:
        raise ContractError("dp_extract needs the social-to-physical station map")
    seeds_idx: list[int] = []
    opened_idx: list[int] = []

    def child_jobs(v: int, k1: int, l1: int, cap_k: int, cap_l: int):
        jobs = [(int(table.child1[v]), k1, l1)]
        if table.child2[v] >= 0:
            jobs.append((int(table.child2[v]), cap_k - k1, cap_l - l1))
        return jobs

    def walk(v: int, k: int, l: int, state: str) -> None:
        if state == "best":
            re = table.relay[v, k, l]
            se = table.seeded[v, k, l]
            active = re if re >= se else se
            if active >= table.inactive[v, k, l]:
                walk(v, k, l, "relay" if re >= se else "seeded")
            else:
                walk(v, k, l, "inactive")
            return
        if state == "inactive":
            if k == 0 or l == 0 or table.child1[v] < 0:
                return
            k1, l1 = (int(x) for x in table.split_inactive[v, k, l])
            assert k1 >= 0, "inactive split missing"
            for u, a, b in child_jobs(v, k1, l1, k, l):
                seeded_u = table.seeded[u, a, b]
                walk(u, a, b, "seeded" if seeded_u > table.inactive[u, a, b] else "inactive")
            return
        assert np.isfinite(table._table(state)[v, k, l]), "walked an undefined cell"
        if state == "relay":
            dummy = bool(table.is_dummy[v])
            if not dummy:
                opened_idx.append(v)
            if table.child1[v] < 0:
                return
            cap_l = l if dummy else l - 1
            k1, l1 = (int(x) for x in table.split_relay[v, k, l])
            for u, a, b in child_jobs(v, k1, l1, k, cap_l):
                walk(u, a, b, "best")
            return
        # seeded
        assert not table.is_dummy[v], "a dummy node can never be seeded"
        seeds_idx.append(v)
        opened_idx.append(v)
        if table.child1[v] < 0:
            return
        k1, l1 = (int(x) for x in table.split_seeded[v, k, l])
        for u, a, b in child_jobs(v, k1, l1, k - 1, l - 1):
            walk(u, a, b, "best")

    walk(table.root_index, budgets.k_s, budgets.k_p, "best")

    origin = g_prime.origin_map
    seeds = tuple(origin[table.node_ids[v]] for v in seeds_idx)
    opened = tuple(stations[origin[table.node_ids[v]]] for v in opened_idx)
    assert len(seeds) <= budgets.k_s and len(opened) <= budgets.k_p
    return Solution(seeds=seeds, opened=opened, algorithm_tag="dp")


# ---------------------------------------------------------------------------
# Full pipeline and the closed-form special cases
# ---------------------------------------------------------------------------

def _subgraph(graph: SocialGraph, members: tuple[str, ...]) -> SocialGraph:
    keep = set(members)
    return SocialGraph(
        tuple(nd for nd in graph.nodes if nd.id in keep),
        tuple((a, b) for a, b in graph.edges if a in keep and b in keep),
    )


def _component_root(graph: SocialGraph, members: tuple[str, ...]) -> str:
    in_deg = _in_degrees_of(graph)
    roots = [v for v in members if in_deg[v] == 0]
    assert len(roots) == 1
    return roots[0]


def solve_forest(instance: Instance) -> Solution:
    """Exact optimum on forests of out-trees: binarize, link, fill, extract."""
    require_assumptions(instance, unit_thresholds=True, bijective_coverage=True,
                        out_forest=True)
    stations = station_map(instance)
    parts = [binarize_tree(_subgraph(instance.graph, comp))
             for comp in weak_components(instance.graph)]
    linked = link_forest(parts)
    table = dp_tables(linked, instance.budgets)

    n_prime = linked.tree.n
    cell_cap = 5 * n_prime * (instance.budgets.k_s + 1) * (instance.budgets.k_p + 1)
    assert table.defined_cell_count() <= cell_cap, "DP table grew beyond its cell bound"

    return dp_extract(table, linked, instance.budgets, stations=stations)


def solve_forest_full_open(instance: Instance) -> Solution:
    """Closed form when the open budget covers every physical node: open all
    of them and seed the roots of the heaviest components."""
    require_assumptions(instance, unit_thresholds=True, bijective_coverage=True,
                        out_forest=True)
    if instance.budgets.k_p != instance.m:
        raise ContractError("full-open solver needs the open budget to equal the physical node count")
    ga = graph_arrays(instance.graph)
    mw = kernels().masked_weight

    ranked = []
    for comp in weak_components(instance.graph):
        mask = np.zeros(ga.n, dtype=bool)
        for node_id in comp:
            mask[ga.index[node_id]] = True
        ranked.append((-mw(ga.weights, mask), _component_root(instance.graph, comp)))
    ranked.sort()
    seeds = tuple(root for _, root in ranked[:min(instance.budgets.k_s, len(ranked))])
    return Solution(seeds=seeds, opened=instance.physical_ids,
                    algorithm_tag="dp_full_open")


def solve_forest_uniform(instance: Instance) -> Solution:
    """Closed form under equal weights: take components largest-first, seed
    each root, and open a breadth-first subtree as large as the remaining
    open budget allows."""
    require_assumptions(instance, unit_thresholds=True, bijective_coverage=True,
                        out_forest=True)
    weights = {nd.weight for nd in instance.graph.nodes}
    if len(weights) != 1:
        raise ContractError("uniform solver needs all node weights equal")
    stations = station_map(instance)
    children = _children_of(instance.graph)

    comps = sorted(weak_components(instance.graph),
                   key=lambda comp: (-len(comp), _component_root(instance.graph, comp)))
    remaining = instance.budgets.k_p
    seeds: list[str] = []
    opened: list[str] = []
    for comp in comps:
        if len(seeds) >= instance.budgets.k_s or remaining <= 0:
            break
        root = _component_root(instance.graph, comp)
        take = min(len(comp), remaining)
        frontier = [root]
        sub: list[str] = []
        while frontier and len(sub) < take:
            node_id = frontier.pop(0)
            sub.append(node_id)
            frontier.extend(children[node_id])
        seeds.append(root)
        opened.extend(stations[v] for v in sub)
        remaining -= take
    return Solution(seeds=tuple(seeds), opened=tuple(opened),
                    algorithm_tag="dp_uniform")
