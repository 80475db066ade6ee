"""Exact hitting times of the simple random walk and RW-Closeness."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .centrality import ScoreVector
from .graph import (
    Graph,
    GraphError,
    bridge_split,
    require_connected,
    require_tree,
)

HittingMatrix = tuple[tuple[Fraction, ...], ...]


class SingularSystemError(ArithmeticError):
    pass


def _integer_rows(A: Sequence[Sequence], b: Sequence) -> list[list[int]]:
    rows = []
    for row, rhs in zip(A, b):
        entries = [Fraction(x) for x in row] + [Fraction(rhs)]
        scale = math.lcm(*(x.denominator for x in entries))
        rows.append([int(x * scale) for x in entries])
    return rows


def solve_exact(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` exactly by fraction-free Gaussian elimination.

    Entries may be ints or Fractions. Rows are scaled to integers, eliminated
    with Bareiss' division-exact update, then back-substituted in rationals.
    """
    m = len(A)
    if m == 0:
        return []
    M = _integer_rows(A, b)
    prev = 1
    for k in range(m):
        if M[k][k] == 0:
            for r in range(k + 1, m):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    break
            else:
                raise SingularSystemError("matrix is singular")
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, m):
            row_i = M[i]
            factor = row_i[k]
            for j in range(k + 1, m + 1):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    x = [Fraction(0)] * m
    for k in range(m - 1, -1, -1):
        acc = Fraction(M[k][m])
        for j in range(k + 1, m):
            acc -= M[k][j] * x[j]
        x[k] = acc / M[k][k]
    return x


def _require_walk_domain(g: Graph, what: str) -> None:
    if g.n < 2:
        raise GraphError(f"{what} needs at least two nodes")
    require_connected(g, what)


def hitting_times_to(g: Graph, target: int) -> list[Fraction]:
    """Expected steps to first reach ``target`` from every node.

    Solves deg(x) H(x) - sum_{y ~ x, y != target} H(y) = deg(x) for x != target.
    """
    others = [x for x in range(g.n) if x != target]
    index = {x: i for i, x in enumerate(others)}
    A = []
    rhs = []
    for x in others:
        row = [0] * len(others)
        row[index[x]] = g.degree(x)
        for y in g.adj[x]:
            if y != target:
                row[index[y]] -= 1
        A.append(row)
        rhs.append(g.degree(x))
    sol = solve_exact(A, rhs)
    out = [Fraction(0)] * g.n
    for x, h in zip(others, sol):
        out[x] = h
    return out


def hitting_times(g: Graph) -> HittingMatrix:
    """``H[u][v]``: expected steps of a walk from ``u`` until it first visits ``v``."""
    _require_walk_domain(g, "hitting_times")
    columns = [hitting_times_to(g, v) for v in range(g.n)]
    return tuple(tuple(columns[v][u] for v in range(g.n)) for u in range(g.n))


def expected_return_time(g: Graph, v: int) -> Fraction:
    require_connected(g, "expected_return_time")
    if not 0 <= v < g.n:
        raise GraphError(f"node {v} out of range")
    if g.degree(v) == 0:
        raise GraphError(f"node {v} is isolated")
    return Fraction(2 * g.m, g.degree(v))


def rw_farness(g: Graph, H: HittingMatrix | None = None) -> list[Fraction]:
    """Inverse RW-Closeness: total hitting time into each node."""
    if H is None:
        H = hitting_times(g)
    return [sum((H[u][v] for u in range(g.n)), Fraction(0)) for v in range(g.n)]


def rw_closeness(g: Graph, H: HittingMatrix | None = None) -> ScoreVector:
    _require_walk_domain(g, "rw_closeness")
    return ScoreVector(tuple(1 / s for s in rw_farness(g, H)), "rwc")


def tree_rwc_bridge_gap(g: Graph, u: int, v: int) -> int:
    """RWC_v^-1 - RWC_u^-1 across tree edge {u, v}, from the component sizes."""
    require_tree(g, "tree_rwc_bridge_gap")
    split = bridge_split(g, u, v)
    return (len(split.side_u) - len(split.side_v)) * (2 * g.n - 1)


def _inner_edges(g: Graph, side: frozenset[int]) -> int:
    return sum(1 for a, b in g.edges if a in side and b in side)


def general_bridge_gap(g: Graph, u: int, v: int) -> int:
    """RWC_v^-1 - RWC_u^-1 across any bridge {u, v}.

    Equals |S_u| (2 E[S_u] + 1) - |S_v| (2 E[S_v] + 1) with E[S] the number of
    edges inside a side.
    """
    require_connected(g, "general_bridge_gap")
    split = bridge_split(g, u, v)
    su, sv = split.side_u, split.side_v
    return len(su) * (2 * _inner_edges(g, su) + 1) - len(sv) * (2 * _inner_edges(g, sv) + 1)


def hitting_matrix_to_json(H: HittingMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in H]
