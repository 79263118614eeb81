import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sociophys import (ContractError, check_assumptions, gen_bipartite_family,
                       gen_random_digraph, gen_random_forest, save_instance,
                       validate_instance, weak_components)


# ---------------------------------------------------------------------------
# the two-sided benchmark family
# ---------------------------------------------------------------------------

def test_family_row_progression():
    expected = [(7, 2, 4), (9, 3, 5), (11, 4, 6), (13, 5, 7), (15, 6, 8)]
    for row, (n, k_s, k_p) in enumerate(expected):
        inst = gen_bipartite_family(row, seed=0)
        assert (inst.n, inst.budgets.k_s, inst.budgets.k_p) == (n, k_s, k_p)
        assert inst.m == inst.n


def test_family_pins_side_weight_extremes():
    inst = gen_bipartite_family(2, seed=5)
    split = check_assumptions(inst).a3_bipartite
    assert split is not None
    assert (split.i_weight_max, split.i_weight_min) == (5.0, 4.0)
    assert (split.j_weight_max, split.j_weight_min) == (3.0, 1.0)
    assert inst.graph.node("s:i00").weight == 5.0
    assert inst.graph.node("s:i01").weight == 4.0
    assert inst.graph.node("s:j00").weight == 3.0
    assert inst.graph.node("s:j01").weight == 1.0


def test_family_meets_all_profiles():
    for seed in range(5):
        inst = gen_bipartite_family(1, seed)
        profile = check_assumptions(inst)
        assert profile.a1_unit_thresholds
        assert profile.a2_bijective_coverage
        assert profile.a3_bipartite is not None
        assert validate_instance(inst) == []


def test_family_every_side_node_touches_an_edge():
    inst = gen_bipartite_family(3, seed=11)
    sources = {a for a, _ in inst.graph.edges}
    sinks = {b for _, b in inst.graph.edges}
    for nd in inst.graph.nodes:
        assert nd.id in (sources if nd.id.startswith("s:i") else sinks)


def test_family_is_deterministic(tmp_path):
    a, b = gen_bipartite_family(2, seed=9), gen_bipartite_family(2, seed=9)
    assert a == b
    save_instance(a, tmp_path / "a.json")
    save_instance(b, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert gen_bipartite_family(2, seed=10) != a


def test_family_rejects_bad_parameters():
    with pytest.raises(ContractError):
        gen_bipartite_family(-1, seed=0)
    with pytest.raises(ContractError):
        gen_bipartite_family(0, seed=0, weights=(3, 1, 5, 1))  # sink above source


def test_family_custom_weights_reach_both_extremes():
    inst = gen_bipartite_family(0, seed=3, weights=(9, 9, 2, 2))
    weights = {nd.id: nd.weight for nd in inst.graph.nodes}
    assert all(w == 9.0 for i, w in weights.items() if i.startswith("s:i"))
    assert all(w == 2.0 for i, w in weights.items() if i.startswith("s:j"))


# ---------------------------------------------------------------------------
# random forests
# ---------------------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 25))
def test_forest_generator_meets_profile(seed, n):
    inst = gen_random_forest(n, seed)
    profile = check_assumptions(inst)
    assert profile.a1_unit_thresholds
    assert profile.a2_bijective_coverage
    assert profile.a4_forest_of_out_trees
    assert validate_instance(inst) == []
    assert all(nd.weight == int(nd.weight) for nd in inst.graph.nodes)


def test_forest_component_count_is_honored():
    inst = gen_random_forest(10, seed=4, n_components=3)
    assert len(weak_components(inst.graph)) == 3


def test_forest_max_out_degree_is_honored():
    for seed in range(10):
        inst = gen_random_forest(30, seed, n_components=1, max_out_degree=2)
        out_deg: dict[str, int] = {}
        for a, _ in inst.graph.edges:
            out_deg[a] = out_deg.get(a, 0) + 1
        assert max(out_deg.values()) <= 2


def test_forest_default_budgets():
    inst = gen_random_forest(10, seed=0)
    assert (inst.budgets.k_s, inst.budgets.k_p) == (2, 5)
    tiny = gen_random_forest(1, seed=0)
    assert (tiny.budgets.k_s, tiny.budgets.k_p) == (1, 1)


def test_forest_rejects_bad_parameters():
    with pytest.raises(ContractError):
        gen_random_forest(0, seed=1)
    with pytest.raises(ContractError):
        gen_random_forest(3, seed=1, n_components=4)
    with pytest.raises(ContractError):
        gen_random_forest(3, seed=1, max_out_degree=0)


def test_forest_is_deterministic():
    assert gen_random_forest(12, 7) == gen_random_forest(12, 7)
    assert gen_random_forest(12, 7) != gen_random_forest(12, 8)


# ---------------------------------------------------------------------------
# random digraphs
# ---------------------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 15))
def test_digraph_generator_is_always_valid(seed, n):
    inst = gen_random_digraph(n, seed, edge_prob=0.4, threshold_mode="general")
    assert validate_instance(inst) == []
    assert check_assumptions(inst).a2_bijective_coverage


def test_digraph_unit_mode_gives_unit_thresholds():
    inst = gen_random_digraph(12, seed=2, edge_prob=0.5)
    assert check_assumptions(inst).a1_unit_thresholds


def test_digraph_general_mode_draws_above_one():
    # with enough nodes and density some threshold must exceed 1
    inst = gen_random_digraph(14, seed=3, edge_prob=0.7, threshold_mode="general")
    assert any(nd.threshold > 1 for nd in inst.graph.nodes)


def test_digraph_edge_probability_extremes():
    assert gen_random_digraph(8, 0, edge_prob=0.0).graph.edges == ()
    full = gen_random_digraph(8, 0, edge_prob=1.0)
    assert len(full.graph.edges) == 8 * 7


def test_digraph_budget_override():
    inst = gen_random_digraph(6, seed=1, budgets=(4, 5))
    assert (inst.budgets.k_s, inst.budgets.k_p) == (4, 5)


def test_digraph_rejects_bad_parameters():
    with pytest.raises(ContractError):
        gen_random_digraph(5, seed=0, threshold_mode="exotic")
    with pytest.raises(ContractError):
        gen_random_digraph(0, seed=0)
