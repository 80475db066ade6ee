from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import connected_graphs, trees
from graphvote.centrality import ScoreVector, closeness, degree, harmonic, rank
from graphvote.condorcet import (
    PreferenceMatrix,
    Verdict,
    check_bridge_axiom,
    check_cc,
    check_condorcet_consistency,
    check_weak_general_cct,
    compare,
    condorcet_report,
    condorcet_winner,
    find_condorcet_cycle,
    general_cct_obstruction,
    level,
    lt_list,
    middle_node,
    net_pair,
    preference_matrix,
    shortlex_compare,
    structural_level,
    tree_compare_structural,
    w_measure,
    weak_condorcet_winners,
)
from graphvote.fixtures import fixture
from graphvote.graph import Graph, NotATreeError, subtree_size
from graphvote.randomwalk import rw_closeness

P2 = Graph.from_edges(2, [(0, 1)])
P3 = Graph.from_edges(3, [(0, 1), (1, 2)])


@given(connected_graphs(max_n=7), st.data())
def test_net_matches_definition(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1))
    assert net_pair(g, u, v) == (oracles.net(g.n, g.edges, u, v), oracles.net(g.n, g.edges, v, u))


def test_fig2_cycle():
    fx = fixture("fig2")
    pm = preference_matrix(fx.graph)
    assert (pm.net[fx["u"]][fx["v"]], pm.net[fx["v"]][fx["u"]]) == (5, 4)
    cycle = find_condorcet_cycle(pm)
    assert cycle is not None
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert pm.beats(a, b)


def test_cycle_search_on_tournaments():
    rock = PreferenceMatrix(((0, 2, 1), (1, 0, 2), (2, 1, 0)))
    assert sorted(find_condorcet_cycle(rock)) == [0, 1, 2]
    chain = PreferenceMatrix(((0, 2, 2), (1, 0, 2), (1, 1, 0)))
    assert find_condorcet_cycle(chain) is None
    assert condorcet_winner(chain) == 0


def test_weak_winners_on_even_path():
    P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    pm = preference_matrix(P4)
    assert condorcet_winner(pm) is None
    assert weak_condorcet_winners(P4, pm) == (1, 2)
    assert [level(P4, pm, v) for v in range(4)] == [1, 0, 0, 1]


@given(trees(min_n=2, max_n=9))
def test_tree_has_winner_or_adjacent_weak_pair(g):
    pm = preference_matrix(g)
    w = condorcet_winner(pm)
    pair = weak_condorcet_winners(g, pm)
    assert (w is None) != (pair is None)
    if pair:
        assert g.has_edge(*pair) and compare(pm, *pair) is Verdict.TIE


@given(trees(min_n=2, max_n=8))
def test_structural_comparison_agrees_with_votes(g):
    pm = preference_matrix(g)
    for u in range(g.n):
        assert structural_level(g, u) == level(g, pm, u)
        for v in range(g.n):
            if u != v:
                assert tree_compare_structural(g, u, v) is compare(pm, u, v)


@given(trees(min_n=2, max_n=9))
def test_preference_is_transitive_on_trees(g):
    pm = preference_matrix(g)
    n = g.n
    for u in range(n):
        for v in range(n):
            for w in range(n):
                if pm.beats(u, v) and pm.beats(v, w):
                    assert pm.beats(u, w)
    assert find_condorcet_cycle(pm) is None


def test_fig5_structural_and_w():
    fx = fixture("fig5")
    g = fx.graph
    u, v, w = fx["u"], fx["v"], fx["w"]
    assert tree_compare_structural(g, u, v) is Verdict.TIE
    assert tree_compare_structural(g, v, w) is Verdict.TIE
    assert tree_compare_structural(g, w, u) is Verdict.FIRST
    assert lt_list(g, fx["r"]) == ()
    assert lt_list(g, w) == (6, 8)
    assert subtree_size(g, fx["a"], w) == 8
    # inverse W values frozen from the oracle subtree sizes
    inverse = {"r": 1, "a": 60, "b": 60, "t": 90, "w": 680, "u": 690, "v": 690,
               "b1": 690, "b2": 690, "deep": 6890}
    scores = w_measure(g)
    assert {k: 1 / scores[fx[k]] for k in inverse} == inverse
    assert general_cct_obstruction(preference_matrix(g)) is not None


def test_w_on_p3_and_leaf_lists():
    assert w_measure(P3).values == (F(1, 6), F(1), F(1, 6))
    fx = fixture("fig5")
    pm = preference_matrix(fx.graph)
    for leaf in (x for x in range(fx.graph.n) if fx.graph.degree(x) == 1):
        assert len(lt_list(fx.graph, leaf)) == level(fx.graph, pm, leaf)


def test_shortlex():
    assert shortlex_compare((), (6,)) == -1
    assert shortlex_compare((6, 8), (6, 9)) == -1
    assert shortlex_compare((6, 9), (6, 9)) == 0
    assert shortlex_compare((9,), (1, 1)) == -1


def test_middle_node_on_odd_and_even_paths():
    P5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert middle_node(P5, 0, 4) == 2
    assert middle_node(P5, 0, 3) == 2
    assert middle_node(P5, 3, 0) == 1


def test_check_cc_examples():
    fx = fixture("fig1")
    assert check_cc(fx.graph, closeness(fx.graph)) == []
    assert check_cc(fx.graph, rw_closeness(fx.graph))
    fx3 = fixture("fig3")
    bad = check_cc(fx3.graph, degree(fx3.graph))
    assert any(set(x.nodes) == {fx3["u"], fx3["v"]} for x in bad)


def test_check_cc_size_mismatch():
    with pytest.raises(ValueError):
        check_cc(P3, ScoreVector((1, 2), "short"))


def test_bridge_axiom():
    assert check_bridge_axiom(P3, closeness(P3)) == []
    flat = ScoreVector((1, 1, 1), "flat")
    assert len(check_bridge_axiom(P3, flat)) == 2


def test_bridge_axiom_fails_for_rwc_on_dense_small_side():
    # K5 on 0..4 attached by a bridge 0-5 to a path of six nodes 5..10
    edges = [(a, b) for a in range(5) for b in range(a + 1, 5)] + [(0, 5)]
    edges += [(i, i + 1) for i in range(5, 10)]
    g = Graph.from_edges(11, edges)
    assert check_bridge_axiom(g, closeness(g)) == []
    bad = check_bridge_axiom(g, rw_closeness(g))
    assert [x.nodes for x in bad] == [(0, 5)]


def test_consistency_examples():
    fx = fixture("fig6g")
    bad = check_condorcet_consistency(fx.graph, closeness(fx.graph))
    assert bad.nodes == (fx["u"],) and bad.detail["top"] == [fx["v"]]
    fx3 = fixture("fig3")
    bad = check_condorcet_consistency(fx3.graph, harmonic(fx3.graph))
    assert bad.nodes == (fx3["v"],) and bad.detail["top"] == [fx3["u"]]


def test_weak_general_cct_examples():
    fx = fixture("fig4")
    bad = check_weak_general_cct(fx.graph, closeness(fx.graph))
    assert (fx["u"], fx["v"]) in [x.nodes for x in bad]
    assert check_weak_general_cct(P2, ScoreVector((1, 2), "any")) == []
    with pytest.raises(NotATreeError):
        check_weak_general_cct(fixture("fig2").graph, closeness(fixture("fig2").graph))


@given(trees(min_n=2, max_n=8))
def test_w_satisfies_weak_general_cct_and_follows_shortlex(g):
    scores = w_measure(g)
    assert check_weak_general_cct(g, scores) == []
    lts = [lt_list(g, v) for v in range(g.n)]
    order = sorted(range(g.n), key=lambda v: (len(lts[v]), lts[v]))
    flat = [v for group in rank(scores) for v in group]
    assert [(len(lts[v]), lts[v]) for v in flat] == [(len(lts[v]), lts[v]) for v in order]


def test_condorcet_report():
    fx = fixture("fig1")
    g = fx.graph
    doc = condorcet_report(g, {"closeness": closeness(g), "rwc": rw_closeness(g)}).to_json()
    assert doc == {"winner": fx["v"], "weak_winners": None, "cycle": None,
                   "consistency": {"closeness": "consistent", "rwc": "violated"}}
    doc = condorcet_report(fixture("fig2").graph, {}).to_json()
    assert doc["winner"] is None and doc["cycle"]
