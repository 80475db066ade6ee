import itertools

import numpy as np
import pytest

import oracles
from graphvote import batch as nb
from graphvote.condorcet import (
    lt_list,
    preference_matrix,
    shortlex_compare,
    tree_compare_structural,
    w_measure,
)
from graphvote.graph import Graph, prufer_to_edges, subtree_size
from graphvote.randomwalk import hitting_times


def decode_all(n):
    seqs = nb.prufer_block(n, 0, nb.tree_count(n))
    return nb.TreeBatch(n, seqs), [Graph.from_edges(n, prufer_to_edges(list(s), n)) for s in seqs]


def test_prufer_block_order():
    seqs = nb.prufer_block(4, 0, 16)
    assert [tuple(s) for s in seqs] == list(itertools.product(range(4), repeat=2))
    assert nb.prufer_block(5, 7, 9).tolist() == [[0, 1, 2], [0, 1, 3]]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_decoding_matches_reference(n):
    tb, graphs = decode_all(n)
    for b, g in enumerate(graphs):
        assert tb.adjacency[b].tolist() == [[g.has_edge(u, v) for v in range(n)] for u in range(n)]
        assert tb.distances[b].tolist() == oracles.floyd_warshall(n, g.edges)
        for x in range(n - 1):
            assert tb.sub[b, x] == subtree_size(g, x, tb.parent[b, x])


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_kernels_match_reference(n):
    tb, graphs = decode_all(n)
    sv = tb.structural_verdict()
    winv = tb.w_inverse()
    key = tb.shortlex_key()
    for b, g in enumerate(graphs):
        pm = preference_matrix(g)
        assert tb.net[b].tolist() == [list(r) for r in pm.net]
        assert tb.hitting[b].tolist() == [[int(x) for x in r] for r in hitting_times(g)]
        assert [1 / x for x in w_measure(g).values] == winv[b].tolist()
        T = tb.subtree[b]
        for u in range(n):
            for v in range(n):
                if u == v:
                    assert T[u, v] == n
                    continue
                assert T[u, v] == subtree_size(g, u, v)
                assert sv[b, u, v] == tree_compare_structural(g, u, v).sign
                assert np.sign(key[b, u] - key[b, v]) == shortlex_compare(lt_list(g, u), lt_list(g, v))


def test_structural_and_walk_checks_hold_on_all_small_trees():
    for n in range(2, 8):
        tb, _ = decode_all(n)
        assert tb.transitive().all() and tb.acyclic().all() and tb.moving_closer().all()


def test_acyclic_detects_a_planted_cycle():
    tb, _ = decode_all(3)
    tb._cache["verdict"] = np.array([[[0, 1, -1], [-1, 0, 1], [1, -1, 0]]] * tb.size, dtype=np.int8)
    assert not tb.acyclic().any()
    assert not tb.transitive().any()
