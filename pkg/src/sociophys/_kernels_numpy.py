"""Pure-numpy compute kernels (reference backend).

This module defines the kernel contract; ``_kernels_numba`` mirrors every
function signature and must return bit-identical results.  Shared conventions:

- Adjacency is CSR over node indices: ``out_indptr`` (int32, length N+1) and
  ``out_idx`` (int32) list each node's out-neighbors in ascending order.
- ``covered`` masks already encode the coverage rule, including the dummy-node
  exception (a node with no covering physical node counts as covered).
- Every weight total is accumulated sequentially in ascending node-index
  order, so results are deterministic and identical across backends
  (``np.cumsum`` is a sequential running sum, matching the numba loop).
- Argmax scans break ties toward the lexicographically smallest index.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

NEG = -np.inf


def masked_weight(weights: np.ndarray, mask: np.ndarray) -> float:
    """Total weight of the masked nodes, summed in ascending index order."""
    selected = weights[mask]
    if selected.size == 0:
        return 0.0
    return float(np.cumsum(selected)[-1])


def _dense_adj(out_indptr, out_idx, n: int) -> np.ndarray:
    adj = np.zeros((n, n), dtype=bool)
    src = np.repeat(np.arange(n), np.diff(out_indptr))
    adj[src, out_idx] = True
    return adj


def cascade_rounds(out_indptr, out_idx, thresholds, covered, seeds) -> np.ndarray:
    """Synchronous threshold cascade.

    Returns ``round_of``: the time-step each node activates (0 = effective
    seed), or -1 if it never activates.  A node activates at t+1 when it is
    covered and at least ``thresholds[j]`` of its in-neighbors are active at
    time t; seeds are effective only if covered.
    """
    n = thresholds.shape[0]
    adj = _dense_adj(out_indptr, out_idx, n)
    round_of = np.full(n, -1, dtype=np.int32)
    active = seeds & covered
    round_of[active] = 0
    t = 0
    while True:
        counts = adj[active].sum(axis=0)
        newly = (round_of == -1) & covered & (counts >= thresholds)
        if not newly.any():
            return round_of
        t += 1
        round_of[newly] = t
        active |= newly


def reach_closure(out_indptr, out_idx, n: int) -> np.ndarray:
    """Boolean reachability matrix: row i marks every node reachable from i
    (including i itself)."""
    reach = _dense_adj(out_indptr, out_idx, n) | np.eye(n, dtype=bool)
    while True:
        r8 = reach.astype(np.uint8)
        grown = reach | ((r8 @ r8) > 0)
        if (grown == reach).all():
            return reach
        reach = grown


def oracle_search(out_indptr, out_idx, thresholds, weights,
                  covers_indptr, covers_idx, always_covered,
                  k_s: int, k_p: int):
    """Exhaustive search over exactly-k_s seed subsets x exactly-k_p open
    subsets, both streamed in lexicographic order (seeds outer).

    Returns (best_value, best_seed_indices, best_open_indices, evaluated).
    Strict improvement keeps the first maximizer, i.e. the lexicographically
    smallest seed combo, then open combo.
    """
    n = weights.shape[0]
    m = covers_indptr.shape[0] - 1
    cover_lists = [covers_idx[covers_indptr[p]:covers_indptr[p + 1]] for p in range(m)]

    best_value = -1.0
    best_seeds = np.zeros(k_s, dtype=np.int32)
    best_opens = np.zeros(k_p, dtype=np.int32)
    evaluated = 0
    seeds_mask = np.zeros(n, dtype=bool)
    for seed_combo in combinations(range(n), k_s):
        seeds_mask[:] = False
        seeds_mask[list(seed_combo)] = True
        for open_combo in combinations(range(m), k_p):
            covered = always_covered.copy()
            for p in open_combo:
                covered[cover_lists[p]] = True
            round_of = cascade_rounds(out_indptr, out_idx, thresholds, covered, seeds_mask)
            value = masked_weight(weights, round_of >= 0)
            evaluated += 1
            if value > best_value:
                best_value = value
                best_seeds = np.array(seed_combo, dtype=np.int32)
                best_opens = np.array(open_combo, dtype=np.int32)
    return best_value, best_seeds, best_opens, evaluated


def dp_fill(order, child1, child2, weights, is_dummy, root,
            best, inactive, relay, seeded,
            split_inactive, split_relay, split_seeded) -> None:
    """Bottom-up fill of the tree-DP value tables (see treedp for semantics).

    Tables are (N', K_s+1, K_p+1) float64 pre-filled with -inf (undefined);
    split arrays are (..., 2) int16 pre-filled with -1 and receive the
    first-child budget share (k1, l1) of the winning split.  The second
    child always receives the full remainder, which is value-correct because
    every consumed child table is monotone non-decreasing on the queried
    region.

    Variants per node and budget pair (k, l):
    - inactive: node stays inactive; children may still be seeded.
    - relay:    node activates through its parent (no seed spent; its own
                physical node is opened unless the node is a dummy).
    - seeded:   node is seeded (spends a seed and opens its physical node).
    - best:     max(inactive, relay, seeded), ties preferring the active
                variants, relay before seeded.
    """
    k_cap = best.shape[1] - 1
    l_cap = best.shape[2] - 1
    g_tab = np.full_like(best, NEG)

    for v in order:
        c1 = int(child1[v])
        c2 = int(child2[v])
        w = float(weights[v])
        dummy = bool(is_dummy[v])
        for k in range(k_cap + 1):
            for l in range(l_cap + 1):
                # inactive: zero when either budget is exhausted or at a leaf;
                # otherwise the best split of (k, l) across children, each
                # child contributing max(inactive, seeded).
                if k == 0 or l == 0 or c1 < 0:
                    inactive[v, k, l] = 0.0
                else:
                    g1 = g_tab[c1, :k + 1, :l + 1]
                    cand = g1 + g_tab[c2, k::-1, l::-1] if c2 >= 0 else g1
                    flat = int(np.argmax(cand))
                    bk, bl = divmod(flat, cand.shape[1])
                    inactive[v, k, l] = cand[bk, bl]
                    split_inactive[v, k, l, 0] = bk
                    split_inactive[v, k, l, 1] = bl

                # relay: defined off the budget caps (the parent that feeds
                # this node must itself spend budget above us); a non-dummy
                # spends one open on itself, a dummy spends nothing and is
                # meaningless at the root.
                if dummy:
                    defined = v != root and k <= k_cap - 1 and l <= l_cap - 1
                    l_child = l
                else:
                    defined = k <= k_cap - 1 and 1 <= l <= l_cap - 1
                    l_child = l - 1
                if defined:
                    if c1 < 0:
                        relay[v, k, l] = w
                    else:
                        b1 = best[c1, :k + 1, :l_child + 1]
                        cand = b1 + best[c2, k::-1, l_child::-1] if c2 >= 0 else b1
                        flat = int(np.argmax(cand))
                        bk, bl = divmod(flat, cand.shape[1])
                        relay[v, k, l] = w + cand[bk, bl]
                        split_relay[v, k, l, 0] = bk
                        split_relay[v, k, l, 1] = bl

                # seeded: needs one seed and one open for the node itself.
                if not dummy and k >= 1 and l >= 1:
                    if c1 < 0:
                        seeded[v, k, l] = w
                    else:
                        b1 = best[c1, :k, :l]
                        cand = b1 + best[c2, k - 1::-1, l - 1::-1] if c2 >= 0 else b1
                        flat = int(np.argmax(cand))
                        bk, bl = divmod(flat, cand.shape[1])
                        seeded[v, k, l] = w + cand[bk, bl]
                        split_seeded[v, k, l, 0] = bk
                        split_seeded[v, k, l, 1] = bl

                re = relay[v, k, l]
                se = seeded[v, k, l]
                active = re if re >= se else se
                ia = inactive[v, k, l]
                best[v, k, l] = active if active >= ia else ia
        g_tab[v] = np.maximum(inactive[v], seeded[v])
