"""Cached array views of instances, shared by every compute path.

Node indices follow ascending id order (the canonical order of the model
types), so "ascending node id" tie-breaks and weight-sum order reduce to
ascending index everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .backends import active_backend, kernels
from .model import Instance, SocialGraph


@dataclass(frozen=True, eq=False)
class GraphArrays:
    ids: tuple[str, ...]
    index: dict
    weights: np.ndarray
    thresholds: np.ndarray
    out_indptr: np.ndarray
    out_idx: np.ndarray
    in_indptr: np.ndarray
    in_idx: np.ndarray

    @property
    def n(self) -> int:
        return len(self.ids)


@dataclass(frozen=True, eq=False)
class InstanceArrays:
    graph: GraphArrays
    phys_ids: tuple[str, ...]
    phys_index: dict
    covers_indptr: np.ndarray  # physical index -> covered social indices
    covers_idx: np.ndarray
    always_covered: np.ndarray  # nodes with no covering physical node at all

    @property
    def m(self) -> int:
        return len(self.phys_ids)


def _csr(pairs: list[tuple[int, int]], n: int) -> tuple[np.ndarray, np.ndarray]:
    """CSR from (row, col) pairs; rows/cols must already be grouped ascending."""
    counts = np.zeros(n, dtype=np.int64)
    for row, _ in pairs:
        counts[row] += 1
    indptr = np.zeros(n + 1, dtype=np.int32)
    indptr[1:] = np.cumsum(counts)
    idx = np.fromiter((col for _, col in pairs), dtype=np.int32, count=len(pairs))
    return indptr, idx


@lru_cache(maxsize=4096)
def graph_arrays(graph: SocialGraph) -> GraphArrays:
    ids = graph.node_ids
    index = {node_id: pos for pos, node_id in enumerate(ids)}
    weights = np.array([nd.weight for nd in graph.nodes], dtype=np.float64)
    thresholds = np.array([nd.threshold for nd in graph.nodes], dtype=np.int64)
    out_pairs = sorted((index[a], index[b]) for a, b in graph.edges)
    in_pairs = sorted((index[b], index[a]) for a, b in graph.edges)
    out_indptr, out_idx = _csr(out_pairs, len(ids))
    in_indptr, in_idx = _csr(in_pairs, len(ids))
    return GraphArrays(ids, index, weights, thresholds,
                       out_indptr, out_idx, in_indptr, in_idx)


@lru_cache(maxsize=4096)
def instance_arrays(instance: Instance) -> InstanceArrays:
    ga = graph_arrays(instance.graph)
    phys_ids = instance.physical_ids
    phys_index = {pid: pos for pos, pid in enumerate(phys_ids)}
    cover_pairs = []
    station_count = np.zeros(ga.n, dtype=np.int64)
    for pos, p in enumerate(instance.physical_nodes):
        for target in p.covers:
            cover_pairs.append((pos, ga.index[target]))
            station_count[ga.index[target]] += 1
    covers_indptr, covers_idx = _csr(sorted(cover_pairs), len(phys_ids))
    return InstanceArrays(ga, phys_ids, phys_index, covers_indptr, covers_idx,
                          always_covered=station_count == 0)


def social_mask(ga: GraphArrays, ids) -> np.ndarray:
    mask = np.zeros(ga.n, dtype=bool)
    for node_id in ids:
        pos = ga.index.get(node_id)
        if pos is None:
            raise KeyError(f"unknown social node id {node_id!r}")
        mask[pos] = True
    return mask


def covered_mask(ia: InstanceArrays, opened) -> np.ndarray:
    """Coverage mask under the given opened physical ids, including the
    always-covered rule for nodes that no physical node serves."""
    covered = ia.always_covered.copy()
    for phys_id in opened:
        pos = ia.phys_index.get(phys_id)
        if pos is None:
            raise KeyError(f"unknown physical node id {phys_id!r}")
        covered[ia.covers_idx[ia.covers_indptr[pos]:ia.covers_indptr[pos + 1]]] = True
    return covered


@lru_cache(maxsize=4096)
def _closure_for(graph: SocialGraph, backend: str) -> np.ndarray:
    ga = graph_arrays(graph)
    return kernels().reach_closure(ga.out_indptr, ga.out_idx, ga.n)


def closure_matrix(graph: SocialGraph) -> np.ndarray:
    """All-pairs reachability (row = source), cached per graph and backend."""
    return _closure_for(graph, active_backend())
