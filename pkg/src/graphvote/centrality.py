"""Distance-based centralities: each is a function f of the distance list A(v).

Scores are exact ``Fraction`` values wherever the measure allows it, so ties
between nodes are exact. Decay with a float ``delta`` falls back to floats,
compared with an absolute tolerance of ``FLOAT_TOL``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Optional, Sequence, Union

from .graph import Graph, GraphError, distance_list, require_connected

Score = Union[Fraction, int, float]
ListFunction = Callable[[Sequence[int]], Score]

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class ScoreVector:
    values: tuple
    measure: str
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> Score:
        return self.values[v]

    def to_json(self, normalize_by: Optional[int] = None) -> dict:
        values = self.values
        if normalize_by is not None:
            values = tuple(x * normalize_by for x in values)
        return {
            "measure": self.measure,
            "params": {k: format_number(v) for k, v in self.params.items()},
            "scores": [format_number(x) for x in values],
            "ranking": [list(group) for group in rank(self)],
        }


Ranking = tuple[tuple[int, ...], ...]


def format_number(x) -> Union[str, float, int]:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or isinstance(x, int):
        return str(x)
    return x


def compare_scores(x: Score, y: Score) -> int:
    """Sign of x - y; exact for rationals, tolerance-based once a float is involved."""
    if isinstance(x, float) or isinstance(y, float):
        diff = float(x) - float(y)
        if abs(diff) <= FLOAT_TOL:
            return 0
        return 1 if diff > 0 else -1
    return (x > y) - (x < y)


def rank(scores: ScoreVector) -> Ranking:
    """Nodes grouped by equal score, best group first."""
    order = sorted(range(len(scores)), key=lambda v: scores[v], reverse=True)
    groups: list[list[int]] = []
    for v in order:
        if groups and compare_scores(scores[groups[-1][0]], scores[v]) == 0:
            groups[-1].append(v)
        else:
            groups.append([v])
    return tuple(tuple(sorted(g)) for g in groups)


def top(scores: ScoreVector) -> frozenset[int]:
    groups = rank(scores)
    return frozenset(groups[0]) if groups else frozenset()


def same_ranking(a: ScoreVector, b: ScoreVector) -> bool:
    if len(a) != len(b):
        raise GraphError(f"score vectors cover {len(a)} and {len(b)} nodes")
    n = len(a)
    return all(
        compare_scores(a[u], a[v]) == compare_scores(b[u], b[v])
        for u in range(n)
        for v in range(u + 1, n)
    )


# -- functions of a distance list -------------------------------------------


def list_sum(a: Sequence[int]) -> int:
    return sum(i * x for i, x in enumerate(a, start=1))


def closeness_f(a: Sequence[int]) -> Fraction:
    return Fraction(1, list_sum(a))


def degree_f(a: Sequence[int]) -> int:
    return a[0] if a else 0


def harmonic_f(a: Sequence[int]) -> Fraction:
    return sum((Fraction(x, i) for i, x in enumerate(a, start=1)), Fraction(0))


def decay_f(delta: Union[Rational, float]) -> ListFunction:
    def f(a: Sequence[int]) -> Score:
        total = 0 if isinstance(delta, float) else Fraction(0)
        power = delta
        for x in a:
            total += x * power
            power *= delta
        return total

    return f


def eccentricity_f(a: Sequence[int]) -> Fraction:
    return Fraction(1, len(a))


def leaf_zeroed_f(a: Sequence[int]) -> Fraction:
    # degree is the first entry of the list
    return closeness_f(a) if a and a[0] > 1 else Fraction(0)


def evaluate(g: Graph, f: ListFunction, measure: str, params: Optional[dict] = None) -> ScoreVector:
    """Score every node by ``f(A(v))``."""
    return ScoreVector(tuple(f(distance_list(g, v)) for v in range(g.n)), measure, params or {})


# -- graph measures ----------------------------------------------------------


def _require_closeness_domain(g: Graph, what: str) -> None:
    if g.n < 2:
        raise GraphError(f"{what} needs at least two nodes")
    require_connected(g, what)


def closeness(g: Graph) -> ScoreVector:
    _require_closeness_domain(g, "closeness")
    return ScoreVector(tuple(Fraction(1, sum(row)) for row in g.distances), "closeness")


def farness(g: Graph) -> list[int]:
    """Sum of distances from each node (inverse closeness)."""
    require_connected(g, "farness")
    return [sum(row) for row in g.distances]


def degree(g: Graph) -> ScoreVector:
    return ScoreVector(tuple(g.degree(v) for v in range(g.n)), "degree")


def harmonic(g: Graph) -> ScoreVector:
    return evaluate(g, harmonic_f, "harmonic")


def parse_delta(delta) -> Union[Fraction, float]:
    if isinstance(delta, float):
        value: Union[Fraction, float] = delta
    else:
        value = Fraction(delta)
    if not 0 < value < 1:
        raise GraphError(f"decay delta must lie in (0, 1), got {delta}")
    return value


def decay(g: Graph, delta=Fraction(4, 5)) -> ScoreVector:
    d = parse_delta(delta)
    return evaluate(g, decay_f(d), "decay", {"delta": d})


def eccentricity(g: Graph) -> ScoreVector:
    _require_closeness_domain(g, "eccentricity")
    return evaluate(g, eccentricity_f, "eccentricity")


def leaf_zeroed_closeness(g: Graph) -> ScoreVector:
    c = closeness(g)
    values = tuple(c[v] if g.degree(v) > 1 else Fraction(0) for v in range(g.n))
    return ScoreVector(values, "x")
