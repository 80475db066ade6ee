from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import connected_graphs, trees
from graphvote.graph import Graph, GraphError, bridge_split, bridges
from graphvote.randomwalk import (
    SingularSystemError,
    expected_return_time,
    general_bridge_gap,
    hitting_times,
    rw_closeness,
    rw_farness,
    solve_exact,
    tree_rwc_bridge_gap,
)

LOLLIPOP = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])


def test_solve_exact_small():
    assert solve_exact([[2, 1], [1, 3]], [3, 5]) == [F(4, 5), F(7, 5)]
    # needs a row swap
    assert solve_exact([[0, 1], [1, 0]], [F(1, 2), 3]) == [3, F(1, 2)]
    with pytest.raises(SingularSystemError):
        solve_exact([[1, 2], [2, 4]], [1, 2])


@given(st.integers(1, 5).flatmap(lambda m: st.tuples(
    st.lists(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7),
                      min_size=m, max_size=m), min_size=m, max_size=m),
    st.lists(st.integers(-9, 9), min_size=m, max_size=m))))
def test_solve_exact_matches_gauss_jordan(case):
    A, b = case
    try:
        x = solve_exact(A, b)
    except SingularSystemError:
        with pytest.raises(StopIteration):
            oracles.gauss_jordan(A, b)
        return
    assert x == oracles.gauss_jordan(A, b)


def test_path_and_cycle_hitting_times():
    P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert [list(r) for r in hitting_times(P4)] == [[0, 1, 4, 9], [5, 0, 3, 8], [8, 3, 0, 5], [9, 4, 1, 0]]
    C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert list(hitting_times(C4)[0]) == [0, 3, 4, 3]


def test_lollipop_values():
    H = hitting_times(LOLLIPOP)
    assert H[0][1] == F(10, 3) and H[4][0] == F(26, 3) and H[0][4] == 18
    assert rw_farness(LOLLIPOP) == [F(73, 3), F(73, 3), 11, 26, 61]
    assert rw_closeness(LOLLIPOP)[2] == F(1, 11)


@given(connected_graphs(min_n=2, max_n=7))
def test_hitting_times_match_markov_oracle(g):
    assert [list(r) for r in hitting_times(g)] == oracles.hitting_times(g.n, g.edges)


@given(connected_graphs(min_n=2, max_n=7), st.data())
def test_return_time_is_one_step_plus_mean_hitting_time(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    H = hitting_times(g)
    mean = sum((H[y][v] for y in g.adj[v]), F(0)) / g.degree(v)
    assert expected_return_time(g, v) == 1 + mean


@given(trees(min_n=2, max_n=8))
def test_tree_edge_hitting_time_and_gap(g):
    H = hitting_times(g)
    rwf = rw_farness(g, H)
    for u, v in g.edges:
        su = len(bridge_split(g, u, v).side_u)
        assert H[u][v] == 2 * su - 1
        assert rwf[v] - rwf[u] == tree_rwc_bridge_gap(g, u, v)


@given(connected_graphs(min_n=2, max_n=8))
def test_bridge_gap_closed_form(g):
    rwf = rw_farness(g)
    for u, v in bridges(g):
        assert rwf[v] - rwf[u] == general_bridge_gap(g, u, v)


def test_walk_domain():
    with pytest.raises(GraphError):
        hitting_times(Graph.from_edges(1, []))
    with pytest.raises(GraphError):
        hitting_times(Graph.from_edges(3, [(0, 1)]))
