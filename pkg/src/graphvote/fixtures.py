"""Named example graphs with marked nodes.

Each fixture carries its edge list plus a set of claims that are re-checked
every time it is loaded, so a transcription error cannot go unnoticed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import canonical
from .centrality import closeness, decay, degree, farness, harmonic, top
from .condorcet import (
    Verdict,
    compare,
    condorcet_winner,
    find_condorcet_cycle,
    preference_matrix,
)
from .graph import Graph, GraphError, distance_list, is_tree
from .randomwalk import hitting_times, rw_closeness


class FixtureError(GraphError):
    pass


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    labels: dict
    winner: Optional[str] = None
    note: str = ""
    meta: dict = field(default_factory=dict)

    def __getitem__(self, label: str) -> int:
        return self.labels[label]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "labels": dict(self.labels),
            "winner": self.winner,
            "note": self.note,
            "meta": self.meta,
        }


def _expect(cond: bool, name: str, what: str) -> None:
    if not cond:
        raise FixtureError(f"fixture {name}: {what}")


def _ids(fx: Fixture, *labels: str) -> set[int]:
    return {fx[x] for x in labels}


# Three-node triangle hub on the left, a path x - . - u - v - w - y, and a
# star with a pendant path on y.
def _fig1() -> Fixture:
    edges = [(0, 1), (2, 0), (1, 2), (0, 3), (1, 3), (2, 3), (4, 5), (10, 8), (12, 11),
             (7, 8), (6, 7), (5, 6), (8, 11), (8, 9), (4, 3)]
    return Fixture("fig1", Graph.from_edges(13, edges),
                   {"x": 3, "u": 5, "v": 6, "w": 7, "y": 8}, winner="v",
                   note="top nodes differ across RWC, closeness, decay(0.8), harmonic, degree")


def _check_fig1(fx: Fixture) -> None:
    g = fx.graph
    _expect(g.n == 13 and g.m == 15, fx.name, "expected 13 nodes and 15 edges")
    _expect(distance_list(g, fx["v"]) == (2, 2, 4, 4), fx.name, "A(v) != (2,2,4,4)")
    pm = preference_matrix(g)
    _expect(condorcet_winner(pm) == fx["v"], fx.name, "v is not the Condorcet winner")
    _expect(top(closeness(g)) == {fx["v"]}, fx.name, "closeness top is not {v}")
    _expect(top(rw_closeness(g)) == {fx["u"]}, fx.name, "RWC top is not {u}")
    _expect(top(harmonic(g)) == {fx["y"]}, fx.name, "harmonic top is not {y}")
    _expect(top(decay(g, Fraction(4, 5))) == {fx["w"]}, fx.name, "decay(0.8) top is not {w}")
    _expect(top(degree(g)) == _ids(fx, "x", "y"), fx.name, "degree top is not {x, y}")
    H = hitting_times(g)
    _expect(H[fx["u"]][fx["v"]] == 17 and H[fx["v"]][fx["u"]] == 13, fx.name,
            "hitting times u->v, v->u are not 17 and 13")


def _fig2() -> Fixture:
    edges = [(1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1), (1, 7), (7, 8), (8, 2),
             (7, 2), (2, 9), (9, 10), (10, 3), (9, 3), (3, 11), (11, 12), (12, 1), (11, 1)]
    edges = [(a - 1, b - 1) for a, b in edges]
    return Fixture("fig2", Graph.from_edges(12, edges), {"v": 0, "u": 1, "w": 2},
                   note="Condorcet cycle (u, v, w)")


def _check_fig2(fx: Fixture) -> None:
    g = fx.graph
    pm = preference_matrix(g)
    u, v, w = fx["u"], fx["v"], fx["w"]
    _expect(pm.net[u][v] == 5 and pm.net[v][u] == 4, fx.name, "Net(u,v), Net(v,u) != 5, 4")
    _expect(pm.beats(u, v) and pm.beats(v, w) and pm.beats(w, u), fx.name,
            "u > v > w > u does not hold")
    _expect(condorcet_winner(pm) is None, fx.name, "unexpected Condorcet winner")
    _expect(find_condorcet_cycle(pm) is not None, fx.name, "no cycle found")


# Path of six ending in v, then u with four leaves.
def _fig3() -> Fixture:
    edges = [(6, 9), (6, 8), (6, 7), (5, 6), (4, 5), (3, 4), (2, 3), (1, 2), (0, 1), (6, 10)]
    return Fixture("fig3", Graph.from_edges(11, edges), {"v": 5, "u": 6}, winner="v",
                   note="Condorcet winner v; degree, harmonic and decay put u first")


def _check_fig3(fx: Fixture) -> None:
    g = fx.graph
    _expect(is_tree(g) and g.n == 11, fx.name, "expected an 11-node tree")
    _expect(condorcet_winner(preference_matrix(g)) == fx["v"], fx.name, "v is not the winner")
    for scores in (degree(g), harmonic(g), decay(g, Fraction(4, 5))):
        _expect(top(scores) == {fx["u"]}, fx.name, f"{scores.measure} top is not {{u}}")


def _fig4() -> Fixture:
    edges = [(0, 3), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)]
    return Fixture("fig4", Graph.from_edges(7, edges), {"u": 0, "v": 5},
                   note="u beats v but has lower closeness")


def _check_fig4(fx: Fixture) -> None:
    g = fx.graph
    u, v = fx["u"], fx["v"]
    _expect(preference_matrix(g).beats(u, v), fx.name, "u does not beat v")
    c = closeness(g)
    _expect(c[u] < c[v], fx.name, "closeness(u) is not below closeness(v)")


def _fig5() -> Fixture:
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (5, 6), (2, 7), (2, 9), (2, 8)]
    labels = {"r": 0, "a": 1, "b": 2, "t": 3, "u": 4, "w": 5, "deep": 6, "v": 7,
              "b1": 8, "b2": 9}
    return Fixture("fig5", Graph.from_edges(10, edges), labels, winner="r",
                   note="u ~ v, v ~ w, w > u; a and b are the unlabeled children of r")


def _check_fig5(fx: Fixture) -> None:
    g = fx.graph
    pm = preference_matrix(g)
    _expect(condorcet_winner(pm) == fx["r"], fx.name, "r is not the winner")
    _expect(compare(pm, fx["u"], fx["v"]) is Verdict.TIE, fx.name, "u ~ v fails")
    _expect(compare(pm, fx["v"], fx["w"]) is Verdict.TIE, fx.name, "v ~ w fails")
    _expect(compare(pm, fx["w"], fx["u"]) is Verdict.FIRST, fx.name, "w > u fails")


def _fig6g() -> Fixture:
    edges = [(1, 2), (2, 3), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (1, 7), (1, 8),
             (1, 9), (1, 10), (3, 12), (3, 7), (3, 8), (3, 9), (3, 10), (3, 11)]
    edges = [(a - 1, b - 1) for a, b in edges]
    return Fixture("fig6g", Graph.from_edges(12, edges), {"u": 0, "w": 1, "v": 2}, winner="u",
                   note="u wins, v has the highest closeness")


def _fig6gp() -> Fixture:
    edges = [(1, 2), (2, 3), (1, 4), (1, 5), (2, 4), (2, 5), (1, 7), (1, 8), (1, 9), (1, 10),
             (3, 7), (3, 8), (3, 9), (3, 10), (3, 6), (6, 11), (6, 12), (1, 3)]
    edges = [(a - 1, b - 1) for a, b in edges]
    return Fixture("fig6gp", Graph.from_edges(12, edges), {"u": 0, "w": 1, "v": 2}, winner="v",
                   note="same distance lists for u and v as fig6g, but v wins")


def _check_fig6(fx: Fixture) -> None:
    g = fx.graph
    u, v = fx["u"], fx["v"]
    _expect(distance_list(g, u) == (8, 1, 2), fx.name, "A(u) != (8,1,2)")
    _expect(distance_list(g, v) == (7, 4), fx.name, "A(v) != (7,4)")
    w = condorcet_winner(preference_matrix(g))
    _expect(w == fx[fx.winner], fx.name, f"{fx.winner} is not the winner")
    _expect(top(rw_closeness(g)) == {w}, fx.name, "RWC does not rank the winner first")
    _expect(top(closeness(g)) == {v}, fx.name, "closeness top is not {v}")
    if fx.name == "fig6g":
        far = farness(g)
        _expect((far[v], far[u], far[fx["w"]]) == (15, 16, 17), fx.name,
                "inverse closeness of v, u, w != 15, 16, 17")


def _gadget_fixture(name: str, gadget: canonical.Gadget) -> Fixture:
    return Fixture(name, gadget.graph, {"u0": gadget.u0, "v0": gadget.v0},
                   meta={"expected_u0": list(gadget.expected_u0),
                         "expected_v0": list(gadget.expected_v0), **gadget.meta})


def _check_gadget(fx: Fixture, verdict: Verdict) -> None:
    g = fx.graph
    _expect(list(distance_list(g, fx["u0"])) == fx.meta["expected_u0"], fx.name, "A(u0) mismatch")
    _expect(list(distance_list(g, fx["v0"])) == fx.meta["expected_v0"], fx.name, "A(v0) mismatch")
    _expect(compare(preference_matrix(g), fx["u0"], fx["v0"]) is verdict, fx.name,
            f"u0 vs v0 is not {verdict.value}")


_REGISTRY: dict[str, tuple[Callable[[], Fixture], Callable[[Fixture], None]]] = {
    "fig1": (_fig1, _check_fig1),
    "fig2": (_fig2, _check_fig2),
    "fig3": (_fig3, _check_fig3),
    "fig4": (_fig4, _check_fig4),
    "fig5": (_fig5, _check_fig5),
    "fig6g": (_fig6g, _check_fig6),
    "fig6gp": (_fig6gp, _check_fig6),
    "fig7": (lambda: _gadget_fixture("fig7", canonical.build_shift_gadget(2, 4)),
             lambda fx: _check_gadget(fx, Verdict.TIE)),
    "fig8": (lambda: _gadget_fixture(
                 "fig8", canonical.build_shift_gadget_extended((3, 5, 2, 3, 2), 2, 4)),
             lambda fx: _check_gadget(fx, Verdict.TIE)),
    "fig9": (lambda: _gadget_fixture("fig9", canonical.build_minimal_gadget(28, 11)),
             lambda fx: _check_gadget(fx, Verdict.FIRST)),
}

FIXTURE_NAMES = tuple(_REGISTRY)


def fixture(name: str, verify: bool = True) -> Fixture:
    try:
        build, check = _REGISTRY[name]
    except KeyError:
        raise FixtureError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None
    fx = build()
    if verify:
        check(fx)
    return fx
