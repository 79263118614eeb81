import dataclasses
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sociophys import (Budgets, OracleRefusal, brute_force_solve,
                       evaluate_solution, gen_random_digraph, k_subsets,
                       search_space_size)
from conftest import make_instance
from _reference import ref_best_value


def test_k_subsets_streams_lexicographically():
    assert list(k_subsets("abcd", 2)) == [
        ("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]
    assert list(k_subsets("abc", 0)) == [()]
    assert list(k_subsets("abc", 4)) == []


def test_search_space_size(path3):
    assert search_space_size(path3) == comb(3, 1) * comb(3, 2)


def test_oracle_on_path_fixture(path3):
    result = brute_force_solve(path3)
    assert result.value == 8.0
    assert result.solution.seeds == ("s:a",)
    assert result.solution.opened == ("p:a", "p:b")
    assert result.solution.algorithm_tag == "oracle"
    assert result.evaluated == 9
    assert evaluate_solution(path3, result.solution).total_weight == result.value


def test_oracle_refuses_past_the_limit(path3):
    with pytest.raises(OracleRefusal) as err:
        brute_force_solve(path3, limit=8)
    assert err.value.exit_code == 4
    assert err.value.count == 9
    assert err.value.limit == 8


def test_force_overrides_the_limit(path3):
    result = brute_force_solve(path3, limit=1, force=True)
    assert result.value == 8.0
    assert result.evaluated == 9


def test_oracle_keeps_the_lexicographically_smallest_optimum():
    # two interchangeable halves: {a -> b} and {c -> d} with equal weights;
    # every optimum has one seeded pair, and (a, {p:a, p:b}) comes first
    inst = make_instance(
        [("s:a", 2.0), ("s:b", 2.0), ("s:c", 2.0), ("s:d", 2.0)],
        [("s:a", "s:b"), ("s:c", "s:d")],
        budgets=(1, 2),
    )
    result = brute_force_solve(inst)
    assert result.value == 4.0
    assert result.solution.seeds == ("s:a",)
    assert result.solution.opened == ("p:a", "p:b")


def test_zero_budgets_evaluate_the_single_empty_pair(path3):
    empty = dataclasses.replace(path3, budgets=Budgets(0, 0))
    result = brute_force_solve(empty)
    assert result.evaluated == 1
    assert result.value == 0.0
    assert result.solution.seeds == () and result.solution.opened == ()


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_oracle_matches_independent_reference(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    inst = gen_random_digraph(n, seed, edge_prob=rng.choice((0.2, 0.5)),
                              threshold_mode=rng.choice(("unit", "general")),
                              budgets=(rng.randint(0, n), rng.randint(0, n)))
    result = brute_force_solve(inst)
    assert result.value == ref_best_value(inst)
    assert result.evaluated == search_space_size(inst)
    assert evaluate_solution(inst, result.solution).total_weight == result.value
