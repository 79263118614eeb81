import dataclasses
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sociophys import (AssumptionError, Budgets, CaseTag, ContractError,
                       E_RATIO, Instance, PhysicalNode, SocialGraph,
                       SocialNode, brute_force_solve, classify_case,
                       evaluate_solution, gen_bipartite_family,
                       gen_random_digraph, greedy_seeds, ratio_bound,
                       reach_weight, solve_approx)
from conftest import make_instance


# ---------------------------------------------------------------------------
# greedy seed selection
# ---------------------------------------------------------------------------

def test_greedy_picks_by_marginal_reach_weight(two_paths):
    trace = greedy_seeds(two_paths)
    assert trace.picks == (("s:a", 10.0), ("s:c", 7.0))
    assert trace.final_set == {"s:a", "s:c"}
    assert trace.reach_size == 3
    assert trace.reach_total == 17.0


def test_greedy_gain_ties_prefer_heavier_node():
    # x -> y reaches weight 7; isolated z also weighs 7 alone: equal gains,
    # z is heavier than x, so z wins the tie
    inst = make_instance([("s:x", 5.0), ("s:y", 2.0), ("s:z", 7.0)],
                         [("s:x", "s:y")], budgets=(1, 3))
    assert greedy_seeds(inst).picks == (("s:z", 7.0),)


def test_greedy_weight_ties_prefer_smaller_id():
    inst = make_instance([("s:b", 5.0), ("s:a", 5.0), ("s:c", 5.0)],
                         budgets=(2, 3))
    assert greedy_seeds(inst).picks == (("s:a", 5.0), ("s:b", 5.0))


def test_greedy_caps_picks_at_node_count():
    inst = make_instance([("s:a", 1.0), ("s:b", 1.0)], budgets=(2, 2))
    assert len(greedy_seeds(inst).picks) == 2


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_greedy_gains_never_increase(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 10)
    inst = gen_random_digraph(n, seed, edge_prob=0.3,
                              budgets=(rng.randint(1, n), rng.randint(1, n)))
    gains = [gain for _, gain in greedy_seeds(inst).picks]
    assert gains == sorted(gains, reverse=True)


# ---------------------------------------------------------------------------
# reach function properties (the submodularity the ratio proof rests on)
# ---------------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_reach_weight_is_monotone_and_submodular(seed):
    rng = random.Random(seed)
    inst = gen_random_digraph(rng.randint(2, 12), seed,
                              edge_prob=rng.choice((0.1, 0.3, 0.6)))
    ids = [nd.id for nd in inst.graph.nodes]
    small = set(rng.sample(ids, rng.randint(0, len(ids) - 1)))
    big = small | set(rng.sample(ids, rng.randint(0, len(ids) - 1)))
    outside = [j for j in ids if j not in big]
    graph = inst.graph
    assert reach_weight(graph, small) <= reach_weight(graph, big)
    if outside:
        j = rng.choice(outside)
        gain_small = reach_weight(graph, small | {j}) - reach_weight(graph, small)
        gain_big = reach_weight(graph, big | {j}) - reach_weight(graph, big)
        assert gain_small >= gain_big


# ---------------------------------------------------------------------------
# the three solver cases
# ---------------------------------------------------------------------------

def test_classify_case_covers_all_three(two_paths, path3):
    surplus = dataclasses.replace(two_paths, budgets=Budgets(2, 1))
    assert classify_case(surplus, greedy_seeds(surplus)) is CaseTag.SEED_SURPLUS
    covered = dataclasses.replace(path3, budgets=Budgets(1, 3))
    assert classify_case(covered, greedy_seeds(covered)) is CaseTag.REACH_COVERED
    assert classify_case(path3, greedy_seeds(path3)) is CaseTag.REACH_CAPPED


def test_seed_surplus_seeds_heaviest_nodes(two_paths):
    surplus = dataclasses.replace(two_paths, budgets=Budgets(3, 2))
    sol = solve_approx(surplus)
    assert sol.seeds == ("s:a", "s:c")  # the two heaviest: 7 and 6
    assert sol.opened == ("p:a", "p:c")
    assert evaluate_solution(surplus, sol).total_weight == 13.0
    assert evaluate_solution(surplus, sol).total_weight == brute_force_solve(surplus).value


def test_seed_surplus_weight_tie_prefers_smaller_id():
    inst = make_instance([("s:b", 5.0), ("s:a", 5.0), ("s:c", 1.0)],
                         budgets=(3, 2))
    assert solve_approx(inst).seeds == ("s:a", "s:b")


def test_reach_covered_opens_whole_reach(path3):
    covered = dataclasses.replace(path3, budgets=Budgets(1, 3))
    sol = solve_approx(covered)
    assert sol.seeds == ("s:a",)
    assert sol.opened == ("p:a", "p:b", "p:c")
    assert evaluate_solution(covered, sol).total_weight == 10.0


def test_reach_capped_grows_heaviest_frontier():
    inst = make_instance(
        [("s:a", 1.0), ("s:b", 9.0), ("s:c", 8.0)],
        [("s:a", "s:b"), ("s:a", "s:c")],
        budgets=(1, 2),
    )
    sol = solve_approx(inst)
    assert sol.seeds == ("s:a",)
    assert sol.opened == ("p:a", "p:b")  # b outweighs c on the frontier
    outcome = evaluate_solution(inst, sol)
    assert outcome.activated == {"s:a", "s:b"}


def test_reach_capped_frontier_tie_prefers_smaller_id():
    inst = make_instance(
        [("s:a", 1.0), ("s:b", 4.0), ("s:c", 4.0)],
        [("s:a", "s:b"), ("s:a", "s:c")],
        budgets=(1, 2),
    )
    assert solve_approx(inst).opened == ("p:a", "p:b")


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_reach_capped_activates_exactly_the_open_budget(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    inst = gen_random_digraph(n, seed, edge_prob=rng.choice((0.3, 0.6)),
                              budgets=(rng.randint(1, n), rng.randint(1, n)))
    trace = greedy_seeds(inst)
    if classify_case(inst, trace) is not CaseTag.REACH_CAPPED:
        return
    sol = solve_approx(inst)
    assert len(sol.opened) == inst.budgets.k_p
    assert len(evaluate_solution(inst, sol).activated) == inst.budgets.k_p


def test_solve_approx_requires_unit_thresholds(diamond):
    with pytest.raises(AssumptionError, match="unit thresholds"):
        solve_approx(diamond)


def test_solve_approx_requires_one_to_one_coverage():
    inst = make_instance([("s:a", 1.0), ("s:b", 1.0)],
                         covers={"p:all": ["s:a", "s:b"]}, budgets=(1, 1))
    with pytest.raises(AssumptionError, match="one-to-one"):
        solve_approx(inst)


def test_zero_budgets_give_empty_solution(path3):
    empty = dataclasses.replace(path3, budgets=Budgets(0, 0))
    sol = solve_approx(empty)
    assert sol.seeds == () and sol.opened == ()
    assert evaluate_solution(empty, sol).total_weight == 0.0


# ---------------------------------------------------------------------------
# ratio bounds
# ---------------------------------------------------------------------------

def test_e_ratio_constant():
    assert E_RATIO == math.e / (math.e - 1.0)
    assert abs(E_RATIO - 1.5819767068693265) < 1e-15


def test_general_bound_is_weight_spread_or_e_ratio(two_paths):
    bounds = ratio_bound(two_paths)
    assert bounds.general_bound == 7.0 / 4.0
    assert bounds.bipartite_bound is None
    near_uniform = make_instance([("s:a", 5.0), ("s:b", 4.0)], budgets=(1, 1))
    assert ratio_bound(near_uniform).general_bound == E_RATIO  # 5/4 < e/(e-1)


def test_bipartite_bound_uses_side_extremes():
    inst = gen_bipartite_family(0, seed=1)
    bounds = ratio_bound(inst)
    assert bounds.general_bound == 5.0  # weight spread 5/1
    assert bounds.bipartite_bound == 3.75  # (5*3)/(4*1)
    uniform_sides = gen_bipartite_family(0, seed=1, weights=(4, 4, 2, 2))
    assert ratio_bound(uniform_sides).bipartite_bound == E_RATIO


def test_ratio_bound_requires_positive_weights():
    inst = Instance(
        graph=SocialGraph((SocialNode("s:a", 0.0),), ()),
        physical_nodes=(PhysicalNode("p:a", ("s:a",)),),
        budgets=Budgets(0, 0),
    )
    with pytest.raises(ContractError):
        ratio_bound(inst)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_greedy_value_within_proven_bound(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    inst = gen_random_digraph(n, seed, edge_prob=rng.choice((0.1, 0.3, 0.6)),
                              budgets=(rng.randint(1, n), rng.randint(1, n)))
    approx = evaluate_solution(inst, solve_approx(inst)).total_weight
    optimum = brute_force_solve(inst).value
    bound = ratio_bound(inst).general_bound
    if optimum == 0.0:
        assert approx == 0.0
    else:
        assert optimum / approx <= bound + 1e-9
