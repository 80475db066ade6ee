"""Graphs as elections: every node votes for whichever candidate is closer.

``Net(u, v)`` counts voters strictly closer to ``u`` than to ``v``; ``u`` beats
``v`` when ``Net(u, v) > Net(v, u)``. Tree-only helpers implement the
level/middle-node characterization of the relation and the W measure built
on subtree sizes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .centrality import ScoreVector, compare_scores, format_number, top
from .graph import (
    Graph,
    GraphError,
    bridge_split,
    bridges,
    is_tree,
    require_connected,
    require_tree,
)


class Verdict(enum.Enum):
    FIRST = "first-preferred"
    SECOND = "second-preferred"
    TIE = "tie"

    @classmethod
    def from_sign(cls, s: int) -> "Verdict":
        return cls.FIRST if s > 0 else cls.SECOND if s < 0 else cls.TIE

    @property
    def sign(self) -> int:
        return {Verdict.FIRST: 1, Verdict.SECOND: -1, Verdict.TIE: 0}[self]


@dataclass(frozen=True)
class PreferenceMatrix:
    net: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.net)

    def beats(self, u: int, v: int) -> bool:
        return self.net[u][v] > self.net[v][u]

    def margin(self, u: int, v: int) -> int:
        return self.net[u][v] - self.net[v][u]


def _json_value(x):
    # node ids and counts stay ints; only exact rationals become strings
    return x if isinstance(x, (int, float, str)) or x is None else format_number(x)


@dataclass(frozen=True)
class Violation:
    axiom: str
    nodes: tuple[int, ...]
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        detail = {
            k: ([_json_value(x) for x in v] if isinstance(v, (list, tuple)) else _json_value(v))
            for k, v in self.detail.items()
        }
        return {"axiom": self.axiom, "nodes": list(self.nodes), "detail": detail}


# -- the election ------------------------------------------------------------


def net_pair(g: Graph, u: int, v: int) -> tuple[int, int]:
    """(Net(u, v), Net(v, u)) from the distance matrix."""
    du, dv = g.distances[u], g.distances[v]
    closer_u = closer_v = 0
    for a, b in zip(du, dv):
        if a < b:
            closer_u += 1
        elif b < a:
            closer_v += 1
    return closer_u, closer_v


def preference_matrix(g: Graph) -> PreferenceMatrix:
    require_connected(g, "preference_matrix")
    net = [[0] * g.n for _ in range(g.n)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            net[u][v], net[v][u] = net_pair(g, u, v)
    return PreferenceMatrix(tuple(tuple(row) for row in net))


def compare(pm: PreferenceMatrix, u: int, v: int) -> Verdict:
    if u == v:
        raise GraphError("compare needs two distinct nodes")
    return Verdict.from_sign(pm.margin(u, v))


def condorcet_winner(pm: PreferenceMatrix) -> Optional[int]:
    for u in range(pm.n):
        if all(pm.beats(u, v) for v in range(pm.n) if v != u):
            return u
    return None


def weak_condorcet_winners(g: Graph, pm: PreferenceMatrix) -> Optional[tuple[int, int]]:
    """Adjacent tied pair beating every other node; only when no winner exists."""
    require_tree(g, "weak_condorcet_winners")
    if condorcet_winner(pm) is not None:
        return None
    for u, v in g.edges:
        if pm.margin(u, v) != 0:
            continue
        if all(pm.beats(u, w) and pm.beats(v, w) for w in range(g.n) if w not in (u, v)):
            return (u, v)
    return None


def find_condorcet_cycle(pm: PreferenceMatrix) -> Optional[list[int]]:
    """Some cycle v1 > v2 > ... > vk > v1 of the strict relation, if any."""
    n = pm.n
    succ = [[v for v in range(n) if v != u and pm.beats(u, v)] for u in range(n)]
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    for root in range(n):
        if state[root]:
            continue
        path = [root]
        state[root] = 1
        iters = [iter(succ[root])]
        while iters:
            for y in iters[-1]:
                if state[y] == 1:
                    return path[path.index(y):]
                if state[y] == 0:
                    state[y] = 1
                    path.append(y)
                    iters.append(iter(succ[y]))
                    break
            else:
                state[path.pop()] = 2
                iters.pop()
    return None


# -- trees: subtree sizes, levels, middle nodes ---------------------------------


def _subtree(g: Graph, u: int, root: int) -> int:
    # |T_u^root|; the whole tree when u == root
    dist = g.distances
    d = dist[u][root]
    return sum(1 for w in range(g.n) if dist[w][root] == dist[w][u] + d)


def structural_level(g: Graph, v: int) -> int:
    """Level read off subtree sizes: nodes whose subtree (rooted at v) is a strict majority."""
    require_tree(g, "structural_level")
    return sum(1 for u in range(g.n) if u != v and 2 * _subtree(g, u, v) > g.n)


def level(g: Graph, pm: PreferenceMatrix, v: int) -> int:
    """Distance to the Condorcet winner, or to the closer weak Condorcet winner."""
    require_tree(g, "level")
    w = condorcet_winner(pm)
    if w is not None:
        return g.distances[v][w]
    pair = weak_condorcet_winners(g, pm)
    if pair is None:
        raise GraphError("tree has neither a Condorcet winner nor weak winners")
    return min(g.distances[v][pair[0]], g.distances[v][pair[1]])


def middle_node(g: Graph, u: int, v: int) -> int:
    """Node on the u-v path at distance ceil(d/2) from u (the one nearer v on odd paths)."""
    dist = g.distances
    d = dist[u][v]
    half = (d + 1) // 2
    for w in range(g.n):
        if dist[u][w] == half and dist[w][v] == d - half:
            return w
    raise GraphError(f"no middle node between {u} and {v}")


def _weakly_preferred(g: Graph, u: int, v: int, levels: Sequence[int]) -> bool:
    if levels[u] != levels[v]:
        return levels[u] < levels[v]
    w = middle_node(g, u, v)
    return _subtree(g, w, u) <= _subtree(g, w, v)


def tree_compare_structural(g: Graph, u: int, v: int) -> Verdict:
    """Preference between two tree nodes without counting any votes.

    Uses only node levels and, at equal level, the sizes of the subtree hanging
    at the middle node of the u-v path as seen from each endpoint.
    """
    require_tree(g, "tree_compare_structural")
    if u == v:
        raise GraphError("tree_compare_structural needs two distinct nodes")
    levels = {x: structural_level(g, x) for x in (u, v)}
    uv = _weakly_preferred(g, u, v, levels)
    vu = _weakly_preferred(g, v, u, levels)
    if uv and vu:
        return Verdict.TIE
    if uv:
        return Verdict.FIRST
    if vu:
        return Verdict.SECOND
    raise GraphError(f"structural comparison of {u} and {v} is not total")


def lt_list(g: Graph, v: int) -> tuple[int, ...]:
    """Increasing majority-sized subtree sizes when the tree is rooted at ``v``."""
    require_tree(g, "lt_list")
    return tuple(sorted(s for u in range(g.n) if u != v and 2 * (s := _subtree(g, u, v)) > g.n))


def shortlex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1: shorter sequences first, equal lengths lexicographically."""
    ka, kb = (len(a), tuple(a)), (len(b), tuple(b))
    return (ka > kb) - (ka < kb)


def w_measure(g: Graph) -> ScoreVector:
    """1 / sum_i t_i n^(k+1-i) over the LT list (t_1..t_k), and 1 for an empty list."""
    require_tree(g, "w_measure")
    n = g.n
    values = []
    for v in range(n):
        lt = lt_list(g, v)
        k = len(lt)
        if k == 0:
            values.append(Fraction(1))
        else:
            values.append(Fraction(1, sum(t * n ** (k + 1 - i) for i, t in enumerate(lt, start=1))))
    return ScoreVector(tuple(values), "w")


def general_cct_obstruction(pm: PreferenceMatrix) -> Optional[tuple[int, int, int]]:
    """A triple u ~ v, v ~ w, w > u.

    Such a triple forces F_u = F_v = F_w and F_w > F_u at once, so no measure
    can turn every pairwise tie into a score tie on that graph.
    """
    n = pm.n
    for u in range(n):
        for v in range(n):
            if v == u or pm.margin(u, v) != 0:
                continue
            for w in range(n):
                if w in (u, v):
                    continue
                if pm.margin(v, w) == 0 and pm.beats(w, u):
                    return (u, v, w)
    return None


# -- axiom checkers ------------------------------------------------------------


def _check_sizes(g: Graph, scores: ScoreVector) -> None:
    if len(scores) != g.n:
        raise GraphError(f"score vector has {len(scores)} entries for {g.n} nodes")


def check_cc(g: Graph, scores: ScoreVector, pm: Optional[PreferenceMatrix] = None) -> list[Violation]:
    """Edges where the head-to-head verdict and the score order disagree."""
    _check_sizes(g, scores)
    require_connected(g, "check_cc")
    out = []
    for u, v in g.edges:
        if pm is not None:
            nuv, nvu = pm.net[u][v], pm.net[v][u]
        else:
            nuv, nvu = net_pair(g, u, v)
        verdict = Verdict.from_sign(nuv - nvu)
        if verdict.sign != compare_scores(scores[u], scores[v]):
            out.append(
                Violation(
                    "cc",
                    (u, v),
                    {"verdict": verdict.value, "net": (nuv, nvu), "scores": (scores[u], scores[v])},
                )
            )
    return out


def check_bridge_axiom(g: Graph, scores: ScoreVector) -> list[Violation]:
    """Bridges where the node on the larger side does not score higher (ties must tie)."""
    _check_sizes(g, scores)
    require_connected(g, "check_bridge_axiom")
    out = []
    for u, v in bridges(g):
        split = bridge_split(g, u, v)
        su, sv = len(split.side_u), len(split.side_v)
        expected = (su > sv) - (su < sv)
        if expected != compare_scores(scores[u], scores[v]):
            out.append(
                Violation("bridge", (u, v), {"sides": (su, sv), "scores": (scores[u], scores[v])})
            )
    return out


def check_condorcet_consistency(
    g: Graph, scores: ScoreVector, pm: Optional[PreferenceMatrix] = None
) -> Optional[Violation]:
    _check_sizes(g, scores)
    if pm is None:
        pm = preference_matrix(g)
    w = condorcet_winner(pm)
    if w is None:
        return None
    best = top(scores)
    if best != {w}:
        return Violation("condorcet-consistency", (w,), {"top": sorted(best)})
    return None


def check_weak_general_cct(
    g: Graph, scores: ScoreVector, pm: Optional[PreferenceMatrix] = None
) -> list[Violation]:
    """Pairs (u, v), adjacent or not, with u > v but F_u <= F_v."""
    require_tree(g, "check_weak_general_cct")
    _check_sizes(g, scores)
    if pm is None:
        pm = preference_matrix(g)
    out = []
    for u in range(g.n):
        for v in range(g.n):
            if u != v and pm.beats(u, v) and compare_scores(scores[u], scores[v]) <= 0:
                out.append(
                    Violation(
                        "weak-general-cct",
                        (u, v),
                        {"net": (pm.net[u][v], pm.net[v][u]), "scores": (scores[u], scores[v])},
                    )
                )
    return out


# -- report ----------------------------------------------------------------------


@dataclass(frozen=True)
class CondorcetReport:
    winner: Optional[int]
    weak_winners: Optional[tuple[int, int]]
    cycle: Optional[list[int]]
    consistency: dict

    def to_json(self) -> dict:
        return {
            "winner": self.winner,
            "weak_winners": list(self.weak_winners) if self.weak_winners else None,
            "cycle": self.cycle,
            "consistency": dict(self.consistency),
        }


def condorcet_report(g: Graph, measures: Mapping[str, ScoreVector]) -> CondorcetReport:
    pm = preference_matrix(g)
    winner = condorcet_winner(pm)
    weak = weak_condorcet_winners(g, pm) if winner is None and is_tree(g) else None
    cycle = find_condorcet_cycle(pm) if winner is None else None
    verdicts = {}
    for name, scores in measures.items():
        if winner is None:
            verdicts[name] = "no-winner"
        else:
            bad = check_condorcet_consistency(g, scores, pm)
            verdicts[name] = "consistent" if bad is None else "violated"
    return CondorcetReport(winner, weak, cycle, verdicts)
