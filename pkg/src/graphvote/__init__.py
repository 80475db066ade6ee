"""Graphs as elections: distance and random-walk centralities, Condorcet
winners, axiom checkers and exhaustive verification suites."""

from .canonical import (
    build_minimal_gadget,
    build_shift_gadget,
    build_shift_gadget_extended,
    canonical_bot,
    reduce_to_canonical,
    shift_step,
)
from .centrality import (
    ScoreVector,
    closeness,
    decay,
    degree,
    eccentricity,
    harmonic,
    leaf_zeroed_closeness,
    rank,
    same_ranking,
    top,
)
from .condorcet import (
    Verdict,
    check_bridge_axiom,
    check_cc,
    check_condorcet_consistency,
    check_weak_general_cct,
    compare,
    condorcet_winner,
    find_condorcet_cycle,
    preference_matrix,
    tree_compare_structural,
    w_measure,
    weak_condorcet_winners,
)
from .fixtures import fixture
from .graph import Graph, GraphError, distance_list, parse_edge_list, to_edge_list
from .randomwalk import hitting_times, rw_closeness
from .verify import run_graph_suite, run_tree_suite, search_counterexample

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphError",
    "ScoreVector",
    "Verdict",
    "build_minimal_gadget",
    "build_shift_gadget",
    "build_shift_gadget_extended",
    "canonical_bot",
    "check_bridge_axiom",
    "check_cc",
    "check_condorcet_consistency",
    "check_weak_general_cct",
    "closeness",
    "compare",
    "condorcet_winner",
    "decay",
    "degree",
    "distance_list",
    "eccentricity",
    "find_condorcet_cycle",
    "fixture",
    "harmonic",
    "hitting_times",
    "leaf_zeroed_closeness",
    "parse_edge_list",
    "preference_matrix",
    "rank",
    "reduce_to_canonical",
    "run_graph_suite",
    "run_tree_suite",
    "rw_closeness",
    "same_ranking",
    "search_counterexample",
    "shift_step",
    "to_edge_list",
    "top",
    "tree_compare_structural",
    "w_measure",
    "weak_condorcet_winners",
]
