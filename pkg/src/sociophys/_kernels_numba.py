"""Numba-accelerated twins of the pure-numpy kernels.

Function-for-function mirror of ``_kernels_numpy`` (see that module for the
kernel contract).  Every routine must return bit-identical results to its
numpy twin: same float operand pairs, same ascending-index accumulation
order, same first-maximum tie-breaking.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def masked_weight(weights, mask):
    total = 0.0
    for j in range(weights.shape[0]):
        if mask[j]:
            total += weights[j]
    return total


@njit(cache=True)
def cascade_rounds(out_indptr, out_idx, thresholds, covered, seeds):
    n = thresholds.shape[0]
    round_of = np.full(n, -1, dtype=np.int32)
    cnt = np.zeros(n, dtype=np.int64)
    frontier = np.empty(n, dtype=np.int32)
    nxt = np.empty(n, dtype=np.int32)
    fsize = 0
    for j in range(n):
        if seeds[j] and covered[j]:
            round_of[j] = 0
            frontier[fsize] = j
            fsize += 1
    t = 0
    while fsize > 0:
        nsize = 0
        for fi in range(fsize):
            i = frontier[fi]
            for e in range(out_indptr[i], out_indptr[i + 1]):
                k = out_idx[e]
                cnt[k] += 1
                if round_of[k] == -1 and covered[k] and cnt[k] >= thresholds[k]:
                    round_of[k] = t + 1
                    nxt[nsize] = k
                    nsize += 1
        frontier, nxt = nxt, frontier
        fsize = nsize
        t += 1
    return round_of


@njit(cache=True)
def reach_closure(out_indptr, out_idx, n):
    reach = np.zeros((n, n), dtype=np.bool_)
    stack = np.empty(n, dtype=np.int32)
    for s in range(n):
        reach[s, s] = True
        stack[0] = s
        sp = 1
        while sp > 0:
            sp -= 1
            i = stack[sp]
            for e in range(out_indptr[i], out_indptr[i + 1]):
                j = out_idx[e]
                if not reach[s, j]:
                    reach[s, j] = True
                    stack[sp] = j
                    sp += 1
    return reach


@njit(cache=True)
def _next_combo(combo, n_items):
    """Advance to the next lexicographic k-combination of range(n_items);
    returns False when exhausted."""
    k = combo.shape[0]
    pos = k - 1
    while pos >= 0 and combo[pos] == n_items - k + pos:
        pos -= 1
    if pos < 0:
        return False
    combo[pos] += 1
    for j in range(pos + 1, k):
        combo[j] = combo[j - 1] + 1
    return True


@njit(cache=True)
def oracle_search(out_indptr, out_idx, thresholds, weights,
                  covers_indptr, covers_idx, always_covered,
                  k_s, k_p):
    n = weights.shape[0]
    m = covers_indptr.shape[0] - 1
    best_value = -1.0
    best_seeds = np.zeros(k_s, dtype=np.int32)
    best_opens = np.zeros(k_p, dtype=np.int32)
    evaluated = 0

    seed_combo = np.empty(k_s, dtype=np.int32)
    for i in range(k_s):
        seed_combo[i] = i
    open_combo = np.empty(k_p, dtype=np.int32)

    covered = np.empty(n, dtype=np.bool_)
    seeds_mask = np.zeros(n, dtype=np.bool_)
    round_of = np.empty(n, dtype=np.int32)
    cnt = np.empty(n, dtype=np.int64)
    frontier = np.empty(n, dtype=np.int32)
    nxt = np.empty(n, dtype=np.int32)

    more_seeds = True
    while more_seeds:
        for i in range(k_s):
            seeds_mask[seed_combo[i]] = True
        for i in range(k_p):
            open_combo[i] = i
        more_opens = True
        while more_opens:
            for j in range(n):
                covered[j] = always_covered[j]
            for oi in range(k_p):
                p = open_combo[oi]
                for e in range(covers_indptr[p], covers_indptr[p + 1]):
                    covered[covers_idx[e]] = True

            # inline cascade over the scratch buffers
            fsize = 0
            for j in range(n):
                cnt[j] = 0
                if seeds_mask[j] and covered[j]:
                    round_of[j] = 0
                    frontier[fsize] = j
                    fsize += 1
                else:
                    round_of[j] = -1
            t = 0
            while fsize > 0:
                nsize = 0
                for fi in range(fsize):
                    i2 = frontier[fi]
                    for e in range(out_indptr[i2], out_indptr[i2 + 1]):
                        kk = out_idx[e]
                        cnt[kk] += 1
                        if round_of[kk] == -1 and covered[kk] and cnt[kk] >= thresholds[kk]:
                            round_of[kk] = t + 1
                            nxt[nsize] = kk
                            nsize += 1
                frontier, nxt = nxt, frontier
                fsize = nsize
                t += 1

            value = 0.0
            for j in range(n):
                if round_of[j] >= 0:
                    value += weights[j]
            evaluated += 1
            if value > best_value:
                best_value = value
                for i in range(k_s):
                    best_seeds[i] = seed_combo[i]
                for i in range(k_p):
                    best_opens[i] = open_combo[i]
            more_opens = _next_combo(open_combo, m)
        for i in range(k_s):
            seeds_mask[seed_combo[i]] = False
        more_seeds = _next_combo(seed_combo, n)
    return best_value, best_seeds, best_opens, evaluated


@njit(cache=True)
def _g_val(inactive, seeded, u, a, b):
    """Child contribution under an inactive parent: the child may be seeded
    or stay inactive, never relayed (ties keep the inactive variant)."""
    s = seeded[u, a, b]
    i = inactive[u, a, b]
    if s > i:
        return s
    return i


@njit(cache=True)
def dp_fill(order, child1, child2, weights, is_dummy, root,
            best, inactive, relay, seeded,
            split_inactive, split_relay, split_seeded):
    n_nodes = order.shape[0]
    k_cap = best.shape[1] - 1
    l_cap = best.shape[2] - 1
    for oi in range(n_nodes):
        v = order[oi]
        c1 = child1[v]
        c2 = child2[v]
        w = weights[v]
        dummy = is_dummy[v]
        for k in range(k_cap + 1):
            for l in range(l_cap + 1):
                # inactive
                if k == 0 or l == 0 or c1 < 0:
                    inactive[v, k, l] = 0.0
                else:
                    bv = -np.inf
                    bk = -1
                    bl = -1
                    for k1 in range(k + 1):
                        for l1 in range(l + 1):
                            val = _g_val(inactive, seeded, c1, k1, l1)
                            if c2 >= 0:
                                val += _g_val(inactive, seeded, c2, k - k1, l - l1)
                            if val > bv:
                                bv = val
                                bk = k1
                                bl = l1
                    inactive[v, k, l] = bv
                    split_inactive[v, k, l, 0] = bk
                    split_inactive[v, k, l, 1] = bl

                # relay
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
                        bv = -np.inf
                        bk = -1
                        bl = -1
                        for k1 in range(k + 1):
                            for l1 in range(l_child + 1):
                                val = best[c1, k1, l1]
                                if c2 >= 0:
                                    val += best[c2, k - k1, l_child - l1]
                                if val > bv:
                                    bv = val
                                    bk = k1
                                    bl = l1
                        relay[v, k, l] = w + bv
                        split_relay[v, k, l, 0] = bk
                        split_relay[v, k, l, 1] = bl

                # seeded
                if (not dummy) and k >= 1 and l >= 1:
                    if c1 < 0:
                        seeded[v, k, l] = w
                    else:
                        bv = -np.inf
                        bk = -1
                        bl = -1
                        for k1 in range(k):
                            for l1 in range(l):
                                val = best[c1, k1, l1]
                                if c2 >= 0:
                                    val += best[c2, k - 1 - k1, l - 1 - l1]
                                if val > bv:
                                    bv = val
                                    bk = k1
                                    bl = l1
                        seeded[v, k, l] = w + bv
                        split_seeded[v, k, l, 0] = bk
                        split_seeded[v, k, l, 1] = bl

                re = relay[v, k, l]
                se = seeded[v, k, l]
                act = re if re >= se else se
                ia = inactive[v, k, l]
                best[v, k, l] = act if act >= ia else ia
