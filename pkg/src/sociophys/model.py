"""Data model for two-layer socio-physical influence instances.

An instance couples a weighted, thresholded social digraph with a physical
coverage layer: each physical node serves ("covers") a set of social nodes,
and a social node can only ever activate while some covering physical node is
open.  Budgets limit how many social nodes may be seeded and how many physical
nodes may be opened.

This module owns the instance/solution JSON formats, structural validation,
and the detection of the structural profiles (unit thresholds, one-to-one
coverage, two-level layering, forest shape) that the specialised solvers
require.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import ContractError, ParseError, ValidationError

__all__ = [
    "SocialNode",
    "SocialGraph",
    "PhysicalNode",
    "Budgets",
    "Instance",
    "BipartiteSplit",
    "AssumptionProfile",
    "Solution",
    "validate_instance",
    "check_assumptions",
    "load_instance",
    "save_instance",
    "load_solution",
    "save_solution",
    "weak_components",
    "station_map",
]


# ---------------------------------------------------------------------------
# Core types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SocialNode:
    """A social-layer node: opaque id, positive weight, activation threshold.

    Weight 0 is tolerated at construction time because internally generated
    dummy nodes use it; user-facing validation still rejects it.
    """

    id: str
    weight: float
    threshold: int = 1

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        object.__setattr__(self, "threshold", int(self.threshold))


@dataclass(frozen=True)
class SocialGraph:
    """A directed social graph.  Edge (i, j) makes i an in-neighbor of j.

    Node and edge sequences are canonicalized (sorted ascending) on
    construction so structurally equal graphs compare and hash equal.
    """

    nodes: tuple[SocialNode, ...]
    edges: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda nd: nd.id))
        edges = tuple(sorted((str(a), str(b)) for a, b in self.edges))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(nd.id for nd in self.nodes)

    def node(self, node_id: str) -> SocialNode:
        nd = _node_map(self).get(node_id)
        if nd is None:
            raise KeyError(f"unknown social node id {node_id!r}")
        return nd


@dataclass(frozen=True)
class PhysicalNode:
    """A physical-layer node and the set of social node ids it covers."""

    id: str
    covers: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "covers", tuple(sorted(set(map(str, self.covers)))))


@dataclass(frozen=True)
class Budgets:
    """Seed budget (social nodes) and open budget (physical nodes).

    Both are "at most" budgets: activation is progressive and monotone, so
    spending less than the budget never beats spending it, and degenerate
    zero budgets simply yield the empty solution.
    """

    k_s: int
    k_p: int

    def __post_init__(self):
        object.__setattr__(self, "k_s", int(self.k_s))
        object.__setattr__(self, "k_p", int(self.k_p))
        if self.k_s < 0 or self.k_p < 0:
            raise ContractError(f"budgets must be non-negative, got {self}")


@dataclass(frozen=True)
class Instance:
    """A complete problem instance: social graph + coverage layer + budgets."""

    graph: SocialGraph
    physical_nodes: tuple[PhysicalNode, ...]
    budgets: Budgets

    def __post_init__(self):
        phys = tuple(sorted(self.physical_nodes, key=lambda p: p.id))
        object.__setattr__(self, "physical_nodes", phys)

    @property
    def n(self) -> int:
        """Number of social nodes (derived, never stored)."""
        return self.graph.n

    @property
    def m(self) -> int:
        """Number of physical nodes (derived, never stored)."""
        return len(self.physical_nodes)

    @property
    def physical_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.physical_nodes)


@dataclass(frozen=True)
class BipartiteSplit:
    """Two-level layering: all edges run from set I into set J, with every
    I-weight at least every J-weight.  Weight extremes are recorded because
    the layered approximation bound is built from them."""

    i_nodes: tuple[str, ...]
    j_nodes: tuple[str, ...]
    i_weight_max: float
    i_weight_min: float
    j_weight_max: float
    j_weight_min: float


@dataclass(frozen=True)
class AssumptionProfile:
    """Which structural profiles an instance satisfies.

    a1_unit_thresholds   -- every activation threshold is 1.
    a2_bijective_coverage -- physical and social layers are in one-to-one
                             correspondence (each physical node covers exactly
                             one social node, each social node exactly once).
    a3_bipartite         -- populated iff the graph is a two-level I -> J
                             layering with I-weights dominating J-weights.
    a4_forest_of_out_trees -- every weak component is a rooted tree with all
                             edges directed away from its unique root.
    """

    a1_unit_thresholds: bool
    a2_bijective_coverage: bool
    a3_bipartite: Optional[BipartiteSplit]
    a4_forest_of_out_trees: bool


@dataclass(frozen=True)
class Solution:
    """A solver's output: seeded social ids, opened physical ids, provenance."""

    seeds: tuple[str, ...]
    opened: tuple[str, ...]
    algorithm_tag: str = ""

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(sorted(set(map(str, self.seeds)))))
        object.__setattr__(self, "opened", tuple(sorted(set(map(str, self.opened)))))


# ---------------------------------------------------------------------------
# Derived lookups (cached on the immutable values)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _node_map(graph: SocialGraph) -> dict[str, SocialNode]:
    return {nd.id: nd for nd in graph.nodes}


@lru_cache(maxsize=4096)
def _in_degrees(graph: SocialGraph) -> dict[str, int]:
    deg = {nd.id: 0 for nd in graph.nodes}
    for _, dst in graph.edges:
        if dst in deg:
            deg[dst] += 1
    return deg


@lru_cache(maxsize=4096)
def _out_degrees(graph: SocialGraph) -> dict[str, int]:
    deg = {nd.id: 0 for nd in graph.nodes}
    for src, _ in graph.edges:
        if src in deg:
            deg[src] += 1
    return deg


@lru_cache(maxsize=4096)
def station_map(instance: Instance) -> Optional[dict[str, str]]:
    """Social id -> covering physical id, when coverage is one-to-one.

    Returns None unless every physical node covers exactly one social node
    and every social node is covered exactly once.  Under that profile the
    map is invertible, and "open the physical node of v" is well defined.
    """
    if instance.m != instance.n:
        return None
    mapping: dict[str, str] = {}
    for p in instance.physical_nodes:
        if len(p.covers) != 1:
            return None
        (covered,) = p.covers
        if covered in mapping:
            return None
        mapping[covered] = p.id
    if set(mapping) != set(instance.graph.node_ids):
        return None
    return mapping


def weak_components(graph: SocialGraph) -> list[tuple[str, ...]]:
    """Weakly connected components, each as a sorted id tuple, ordered by
    their smallest member."""
    neighbors: dict[str, set[str]] = {nd.id: set() for nd in graph.nodes}
    for a, b in graph.edges:
        if a in neighbors and b in neighbors:
            neighbors[a].add(b)
            neighbors[b].add(a)
    seen: set[str] = set()
    comps: list[tuple[str, ...]] = []
    for start in graph.node_ids:  # ascending id
        if start in seen:
            continue
        stack = [start]
        comp = []
        seen.add(start)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nxt in neighbors[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        comps.append(tuple(sorted(comp)))
    return comps


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_instance(instance: Instance) -> list[str]:
    """Check every structural invariant; return the list of violations.

    An empty report means the instance is valid.  Violations are data, not
    exceptions: callers that need hard failure wrap the report in a
    ValidationError (load_instance and the CLI do).
    """
    report: list[str] = []
    graph = instance.graph

    social_ids = [nd.id for nd in graph.nodes]
    phys_ids = [p.id for p in instance.physical_nodes]
    seen: set[str] = set()
    for node_id in social_ids + phys_ids:
        if node_id in seen:
            report.append(f"duplicate id {node_id}")
        seen.add(node_id)

    if not social_ids:
        report.append("no social nodes")
    if not phys_ids:
        report.append("no physical nodes")

    social_set = set(social_ids)
    for nd in graph.nodes:
        if nd.weight <= 0:
            report.append(f"non-positive weight at {nd.id}")
        if nd.threshold < 1:
            report.append(f"threshold below 1 at {nd.id}")

    seen_edges: set[tuple[str, str]] = set()
    for src, dst in graph.edges:
        for endpoint in (src, dst):
            if endpoint not in social_set:
                report.append(f"edge endpoint {endpoint} is not a social node")
        if src == dst:
            report.append(f"self-loop at {src}")
        if (src, dst) in seen_edges:
            report.append(f"duplicate edge {src}->{dst}")
        seen_edges.add((src, dst))

    in_deg = _in_degrees(graph)
    for nd in graph.nodes:
        # in-degree-0 nodes carry threshold 1 by convention; everyone else
        # must be satisfiable by their in-neighborhood.
        limit = max(in_deg[nd.id], 1)
        if nd.threshold > limit:
            report.append(f"threshold exceeds in-degree at {nd.id}")

    covered: set[str] = set()
    for p in instance.physical_nodes:
        if not p.covers:
            report.append(f"empty coverage at {p.id}")
        for target in p.covers:
            if target not in social_set:
                report.append(f"coverage of {p.id} references unknown social node {target}")
            covered.add(target)
    for node_id in social_ids:
        if node_id not in covered:
            report.append(f"uncovered social node {node_id}")

    if instance.budgets.k_s > len(social_ids):
        report.append("seed budget exceeds social node count")
    if instance.budgets.k_p > len(phys_ids):
        report.append("open budget exceeds physical node count")

    return report


def check_assumptions(instance: Instance) -> AssumptionProfile:
    """Detect which solver-enabling structural profiles hold.

    Pure: the same instance always yields the same profile.  Callers should
    validate first; the checks assume structurally sane data.
    """
    graph = instance.graph
    a1 = all(nd.threshold == 1 for nd in graph.nodes)
    a2 = station_map(instance) is not None
    a3 = _bipartite_split(graph)
    a4 = _is_out_forest(graph)
    return AssumptionProfile(
        a1_unit_thresholds=a1,
        a2_bijective_coverage=a2,
        a3_bipartite=a3,
        a4_forest_of_out_trees=a4,
    )


def require_assumptions(instance: Instance, *, unit_thresholds: bool = False,
                        bijective_coverage: bool = False,
                        out_forest: bool = False) -> AssumptionProfile:
    """Check the named structural profiles and raise AssumptionError (a
    contract error naming the failed profile) if any is missing.  Solvers
    call this as their precondition gate."""
    from .errors import AssumptionError  # local import keeps module load light

    profile = check_assumptions(instance)
    if unit_thresholds and not profile.a1_unit_thresholds:
        raise AssumptionError("requires unit thresholds (every activation threshold equal to 1)")
    if bijective_coverage and not profile.a2_bijective_coverage:
        raise AssumptionError("requires one-to-one coverage between physical and social nodes")
    if out_forest and not profile.a4_forest_of_out_trees:
        raise AssumptionError("requires the social graph to be a forest of out-trees")
    return profile


def _bipartite_split(graph: SocialGraph) -> Optional[BipartiteSplit]:
    """Two-level layering check: sources I (out-degree >= 1, in-degree 0)
    feeding sinks J (in-degree >= 1, out-degree 0), with min I-weight >=
    max J-weight.  Returns the split record, or None."""
    in_deg = _in_degrees(graph)
    out_deg = _out_degrees(graph)
    i_nodes, j_nodes = [], []
    for nd in graph.nodes:
        if out_deg[nd.id] >= 1 and in_deg[nd.id] == 0:
            i_nodes.append(nd)
        elif out_deg[nd.id] == 0 and in_deg[nd.id] >= 1:
            j_nodes.append(nd)
        else:
            return None  # isolated or mid-layer node
    if not i_nodes or not j_nodes:
        return None
    i_weights = [nd.weight for nd in i_nodes]
    j_weights = [nd.weight for nd in j_nodes]
    if min(i_weights) < max(j_weights):
        return None
    return BipartiteSplit(
        i_nodes=tuple(nd.id for nd in i_nodes),
        j_nodes=tuple(nd.id for nd in j_nodes),
        i_weight_max=max(i_weights),
        i_weight_min=min(i_weights),
        j_weight_max=max(j_weights),
        j_weight_min=min(j_weights),
    )


def _is_out_forest(graph: SocialGraph) -> bool:
    """True iff every weak component is a tree with edges pointing away from
    a unique in-degree-0 root (in-degree <= 1 everywhere plus the edge-count
    balance rules out cycles)."""
    in_deg = _in_degrees(graph)
    if any(d > 1 for d in in_deg.values()):
        return False
    edge_count = {nd.id: 0 for nd in graph.nodes}
    for src, dst in graph.edges:
        if src not in edge_count or dst not in edge_count:
            return False
    for comp in weak_components(graph):
        roots = [v for v in comp if in_deg[v] == 0]
        members = set(comp)
        n_edges = sum(1 for src, dst in graph.edges if src in members)
        if len(roots) != 1 or n_edges != len(comp) - 1:
            return False
    return True


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------
#
# Instance file (JSON, UTF-8), canonical key order, node lists sorted by id:
#   { "social_nodes": [{"id": "s:a", "weight": 5.0, "threshold": 1}, ...],
#     "edges": [["s:a", "s:b"], ...],
#     "physical_nodes": [{"id": "p:a", "covers": ["s:a"]}, ...],
#     "budgets": {"k_s": 2, "k_p": 4} }
#
# Solution file:
#   { "seeds": [...], "opened": [...], "algorithm": "greedy|dp|oracle",
#     "value": <real>, "activated": [...] }

def _expect(mapping, key, kind, where: str):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ParseError(f"missing field '{key}' in {where}")
    value = mapping[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ParseError(f"field '{key}' in {where} must be a number")
        return float(value)
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParseError(f"field '{key}' in {where} must be an integer")
        return value
    if not isinstance(value, kind):
        raise ParseError(f"field '{key}' in {where} has the wrong type")
    return value


def instance_to_dict(instance: Instance) -> dict:
    """Canonical JSON-ready form (fixed key order, sorted node lists)."""
    return {
        "social_nodes": [
            {"id": nd.id, "weight": nd.weight, "threshold": nd.threshold}
            for nd in instance.graph.nodes
        ],
        "edges": [[a, b] for a, b in instance.graph.edges],
        "physical_nodes": [
            {"id": p.id, "covers": list(p.covers)} for p in instance.physical_nodes
        ],
        "budgets": {"k_s": instance.budgets.k_s, "k_p": instance.budgets.k_p},
    }


def instance_from_dict(data: dict) -> Instance:
    """Parse the instance schema; structural problems raise ParseError."""
    if not isinstance(data, dict):
        raise ParseError("instance file must contain a JSON object")
    raw_nodes = _expect(data, "social_nodes", list, "instance")
    raw_edges = _expect(data, "edges", list, "instance")
    raw_phys = _expect(data, "physical_nodes", list, "instance")
    raw_budgets = _expect(data, "budgets", dict, "instance")

    nodes = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(raw_nodes):
        where = f"social_nodes[{i}]"
        node_id = _expect(entry, "id", str, where)
        weight = _expect(entry, "weight", float, where)
        threshold = _expect(entry, "threshold", int, where) if "threshold" in entry else 1
        if node_id in seen_ids:
            raise ParseError(f"duplicate id {node_id}")
        seen_ids.add(node_id)
        nodes.append(SocialNode(node_id, weight, threshold))

    edges = []
    for i, entry in enumerate(raw_edges):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ParseError(f"edges[{i}] must be a [source, target] pair")
        edges.append((str(entry[0]), str(entry[1])))

    phys = []
    for i, entry in enumerate(raw_phys):
        where = f"physical_nodes[{i}]"
        phys_id = _expect(entry, "id", str, where)
        covers = _expect(entry, "covers", list, where)
        if phys_id in seen_ids:
            raise ParseError(f"duplicate id {phys_id}")
        seen_ids.add(phys_id)
        phys.append(PhysicalNode(phys_id, tuple(map(str, covers))))

    k_s = _expect(raw_budgets, "k_s", int, "budgets")
    k_p = _expect(raw_budgets, "k_p", int, "budgets")
    if k_s < 0 or k_p < 0:
        raise ParseError("budgets must be non-negative")

    return Instance(SocialGraph(tuple(nodes), tuple(edges)), tuple(phys), Budgets(k_s, k_p))


def save_instance(instance: Instance, path) -> None:
    """Write the canonical instance file (stable bytes for equal instances)."""
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n", encoding="utf-8")


def load_instance(path, validate: bool = True) -> Instance:
    """Read an instance file; malformed data raises ParseError, invariant
    violations raise ValidationError embedding the full report."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    instance = instance_from_dict(data)
    if validate:
        report = validate_instance(instance)
        if report:
            raise ValidationError(report)
    return instance


def save_solution(solution: Solution, path, value: float | None = None,
                  activated: Iterable[str] | None = None) -> None:
    """Write the solution file; value/activated come from the cascade evaluator."""
    payload = {
        "seeds": list(solution.seeds),
        "opened": list(solution.opened),
        "algorithm": solution.algorithm_tag,
        "value": float(value) if value is not None else None,
        "activated": sorted(activated) if activated is not None else None,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_solution(path) -> tuple[Solution, Optional[float], Optional[tuple[str, ...]]]:
    """Read a solution file back as (Solution, value, activated)."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    seeds = _expect(data, "seeds", list, "solution")
    opened = _expect(data, "opened", list, "solution")
    algorithm = _expect(data, "algorithm", str, "solution")
    value = data.get("value")
    activated = data.get("activated")
    return (
        Solution(tuple(map(str, seeds)), tuple(map(str, opened)), algorithm),
        float(value) if value is not None else None,
        tuple(sorted(map(str, activated))) if activated is not None else None,
    )
