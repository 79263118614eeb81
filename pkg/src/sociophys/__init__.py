"""Budgeted influence maximization on two-layer socio-physical networks.

A social layer (weighted digraph, per-node activation thresholds) spreads
influence deterministically; a physical layer of stations gates which social
nodes may activate at all.  Given a seed budget and a station-opening budget,
the solvers pick seeds and stations to maximize the total weight of the
eventually-activated set: a bounded-ratio greedy for general digraphs, an
exact dynamic program for forests of out-trees, and an exhaustive oracle for
ground truth.
"""

__version__ = "0.1.0"

from .approx import (CaseTag, E_RATIO, GreedyTrace, RatioBound, classify_case,
                     greedy_seeds, ratio_bound, solve_approx)
from .backends import active_backend, set_backend, use_backend
from .bench import BenchRow, compare_backends, read_bench_csv, run_bench, write_bench_csv
from .cascade import (CascadeResult, evaluate_solution, reach_count,
                      reach_weight, reachable_set, simulate_cascade)
from .errors import (AssumptionError, ContractError, OracleRefusal, ParseError,
                     SocioPhysError, ValidationError)
from .generators import gen_bipartite_family, gen_random_digraph, gen_random_forest
from .model import (AssumptionProfile, BipartiteSplit, Budgets, Instance,
                    PhysicalNode, SocialGraph, SocialNode, Solution,
                    check_assumptions, instance_from_dict, instance_to_dict,
                    load_instance, load_solution, require_assumptions,
                    save_instance, save_solution, station_map,
                    validate_instance, weak_components)
from .oracle import OracleResult, brute_force_solve, k_subsets, search_space_size
from .treedp import (BinarizedTree, DpTable, binarize_tree, contract_dummies,
                     dp_extract, dp_tables, link_forest, solve_forest,
                     solve_forest_full_open, solve_forest_uniform)

__all__ = [
    "__version__",
    # model
    "SocialNode", "SocialGraph", "PhysicalNode", "Budgets", "Instance",
    "Solution", "BipartiteSplit", "AssumptionProfile",
    "validate_instance", "check_assumptions", "require_assumptions",
    "station_map", "weak_components",
    "instance_to_dict", "instance_from_dict",
    "save_instance", "load_instance", "save_solution", "load_solution",
    # cascade
    "CascadeResult", "simulate_cascade", "evaluate_solution",
    "reachable_set", "reach_count", "reach_weight",
    # greedy
    "E_RATIO", "GreedyTrace", "CaseTag", "RatioBound",
    "greedy_seeds", "classify_case", "solve_approx", "ratio_bound",
    # tree DP
    "BinarizedTree", "DpTable", "binarize_tree", "link_forest",
    "contract_dummies", "dp_tables", "dp_extract",
    "solve_forest", "solve_forest_full_open", "solve_forest_uniform",
    # oracle
    "OracleResult", "brute_force_solve", "k_subsets", "search_space_size",
    # bench + backends
    "BenchRow", "run_bench", "write_bench_csv", "read_bench_csv",
    "compare_backends", "active_backend", "set_backend", "use_backend",
    # errors
    "SocioPhysError", "ValidationError", "ParseError", "ContractError",
    "AssumptionError", "OracleRefusal",
]
