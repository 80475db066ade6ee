import json
from fractions import Fraction

import pytest

from graphvote.centrality import ScoreVector, closeness
from graphvote.condorcet import check_condorcet_consistency
from graphvote.graph import Graph, GraphError, is_connected, is_tree
from graphvote.verify import (
    BASE_CLAIMS,
    MEASURES,
    RWC_CLAIMS,
    ClaimResult,
    VerificationReport,
    axiom_violations,
    run_graph_suite,
    run_tree_suite,
    search_counterexample,
)


def reversed_closeness(g):
    return ScoreVector(tuple(-x for x in closeness(g).values), "closeness-reversed")


def test_trivial_tree_suite():
    r = run_tree_suite(2)
    assert r.passed and r.instances == 1
    assert set(r.claims) == set(BASE_CLAIMS + RWC_CLAIMS)


def test_tree_suite_n7():
    r = run_tree_suite(7)
    assert r.passed
    assert r.instances == sum(n ** (n - 2) for n in range(3, 8)) + 1
    assert all(c.checked == r.instances for c in r.claims.values())


def test_backends_give_identical_reports():
    a = run_tree_suite(6, backend="numpy").to_json()
    b = run_tree_suite(6, backend="reference").to_json()
    a["params"].pop("backend")
    b["params"].pop("backend")
    assert a == b


def test_rwc_claims_capped():
    r = run_tree_suite(5, rwc_n_max=4)
    assert r.claims["rwc-edge-gap"].checked == sum(n ** (n - 2) for n in range(3, 5)) + 1
    assert r.claims["condorcet-consistency"].checked == r.instances


def test_mutant_measure_fails_with_witness():
    r = run_tree_suite(5, measure=reversed_closeness)
    claim = r.claims["condorcet-consistency"]
    assert not claim.passed and not r.passed
    w = claim.witness
    g = Graph.from_edges(w["n"], w["edges"])
    assert check_condorcet_consistency(g, reversed_closeness(g)) is not None
    json.dumps(r.to_json())
    assert r.params["backend"] == "reference"


def test_reports_are_deterministic():
    a = json.dumps(run_graph_suite(200, n_max=12, seed=3, rwc_samples=20).to_json())
    b = json.dumps(run_graph_suite(200, n_max=12, seed=3, rwc_samples=20).to_json())
    assert a == b


def test_merge_is_order_independent():
    def part(key, ok):
        r = VerificationReport("t", {})
        r.instances = 1
        r.claim("c").record(ok, key, lambda: {"key": key})
        return r

    parts = [part((1,), True), part((3,), False), part((2,), False)]
    out = []
    for order in (parts, parts[::-1]):
        total = VerificationReport("t", {})
        for p in order:
            total.merge(p)
        out.append(total.to_json())
    assert out[0] == out[1]
    assert out[0]["claims"][0]["witness"] == {"key": (2,)}


def test_claim_result_json():
    c = ClaimResult("x")
    c.record(True, (0,), dict)
    assert c.to_json() == {"claim": "x", "status": "pass", "checked": 1, "failures": 0, "witness": None}


def test_graph_suite_small():
    r = run_graph_suite(300, n_max=15, seed=1, rwc_samples=30)
    assert r.passed
    assert r.claims["closeness-cc"].checked == 300
    assert r.claims["rwc-bridge-gap"].checked == 30
    assert r.claims["fixtures-reverify"].checked == 10


def test_tree_cap():
    with pytest.raises(GraphError):
        run_tree_suite(10)


@pytest.mark.parametrize("measure", ["degree", "harmonic", "decay"])
def test_search_finds_tree_witness(measure):
    w = search_counterexample(measure, "condorcet-consistency", "trees", n_max=11, seed=0)
    assert w is not None
    assert is_tree(w.graph) and w.graph.n <= w.original.n
    assert axiom_violations("condorcet-consistency", w.graph, _score(measure, w.graph))
    json.dumps(w.to_json())


def _score(measure, g):
    return MEASURES[measure](g, Fraction(4, 5))


def test_search_rwc_cc_on_graphs():
    w = search_counterexample("rwc", "cc", "graphs", n_max=10, seed=0)
    assert w is not None and is_connected(w.graph)
    assert axiom_violations("cc", w.graph, _score("rwc", w.graph))


def test_search_closeness_finds_nothing():
    assert search_counterexample("closeness", "condorcet-consistency", "trees", n_max=11, budget=500) is None
    assert search_counterexample("closeness", "cc", "graphs", n_max=10, budget=300) is None


def test_search_errors():
    with pytest.raises(GraphError):
        search_counterexample("nope", "cc")
    with pytest.raises(GraphError):
        search_counterexample("closeness", "nope")
    with pytest.raises(GraphError):
        search_counterexample("w", "cc", "graphs")


def test_worker_pool_matches_serial_run():
    assert run_tree_suite(6, workers=2).to_json() == run_tree_suite(6).to_json()
