"""Distance-count lists as abstract objects: sums, weights, shifts, and the
unique low-weight representative for each (sum, total) pair.

Also builds the small graphs that realize a shift (or a unit increase in the
sum) between two adjacent nodes, which is what ties closeness-equivalence to
the pairwise-comparison axiom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .centrality import compare_scores, list_sum
from .graph import Graph, GraphError, distance_list

NList = tuple[int, ...]

__all__ = [
    "CanonicalList",
    "Gadget",
    "build_minimal_gadget",
    "build_shift_gadget",
    "build_shift_gadget_extended",
    "canonical_bot",
    "caterpillar",
    "check_regularity",
    "find_regularity_counterexample",
    "list_add",
    "list_sum",
    "list_weight",
    "realizable_lists",
    "reduce_to_canonical",
    "shift_step",
]


@dataclass(frozen=True)
class CanonicalList:
    counts: NList
    S: int
    n: int
    k: int
    j: int


def list_weight(a: Sequence[int]) -> int:
    if any(x == 0 for x in a[1:]):
        raise GraphError(f"weight undefined: zero entry past position 1 in {tuple(a)}")
    return sum(x - 1 for x in a[1:])


def list_add(a: Sequence[int], b: Sequence[int]) -> NList:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def shift_step(a: Sequence[int], i: int, j: int) -> NList:
    """Move one unit from position i down to i-1 and one from j up to j+1 (1-based)."""
    k = len(a)
    if not 2 <= i <= j <= k:
        raise GraphError(f"shift needs 2 <= i <= j <= {k}, got i={i}, j={j}")
    b = list(a) + [0]
    b[i - 1] -= 1
    b[j - 1] -= 1
    b[i - 2] += 1
    b[j] += 1
    if min(b) < 0:
        raise GraphError(f"shift ({i}, {j}) of {tuple(a)} makes an entry negative")
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


def canonical_bot(S: int, n: int) -> CanonicalList:
    """The unique n-list of sum S with weight at most one."""
    if n < 1 or not n <= S <= n * (n + 1) // 2:
        raise GraphError(f"sum {S} impossible for an {n}-list")
    excess = S - n
    k = 1
    while k * (k + 1) // 2 <= excess:
        k += 1
    j = excess - k * (k - 1) // 2 + 1
    counts = [1] * k
    if j >= 2:
        counts[j - 1] = 2
    counts[0] = n - sum(counts[1:])
    return CanonicalList(tuple(counts), S, n, k, j)


def _pick_shift(a: Sequence[int]) -> tuple[int, int]:
    heavy = [i for i in range(2, len(a) + 1) if a[i - 1] > 1]
    i, j = heavy[0], heavy[-1]
    if i == j and a[i - 1] < 3:
        raise GraphError("list already has weight at most one")
    return i, j


def reduce_to_canonical(a: Sequence[int]) -> tuple[CanonicalList, list[NList]]:
    """Shift ``a`` down to its canonical form; returns the form and every macro step.

    Each macro step picks the smallest heavy index i and the largest heavy
    index j, then applies m = min(i-1, k-j+1) unit shifts (i-t, j+t), which
    pushes one unit to position 1 or onto a new last position.
    """
    a = tuple(a)
    if not a or min(a) < 1:
        raise GraphError(f"{a} is not realizable: every entry must be positive")
    n, S = sum(a), list_sum(a)
    trace: list[NList] = []
    while list_weight(a) > 1:
        i, j = _pick_shift(a)
        m = min(i - 1, len(a) - j + 1)
        for t in range(m):
            a = shift_step(a, i - t, j + t)
        trace.append(a)
    final = canonical_bot(S, n)
    if final.counts != a:
        raise AssertionError(f"reduction ended at {a}, expected {final.counts}")
    return final, trace


def realizable_lists(n: int) -> Iterator[NList]:
    """All n-lists with positive entries (compositions of n)."""
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


# -- regularity ------------------------------------------------------------------


def check_regularity(f: Callable, a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> bool:
    """Whether f(a) >= f(b) iff f(a + c) >= f(b + c) on this one triple."""
    if sum(a) != sum(b):
        raise GraphError("regularity compares two lists with the same total")
    if len(c) > min(len(a), len(b)):
        raise GraphError("added list must not be longer than either compared list")
    before = compare_scores(f(a), f(b)) >= 0
    after = compare_scores(f(list_add(a, c)), f(list_add(b, c))) >= 0
    return before == after


def find_regularity_counterexample(
    f: Callable, n_max: int = 6, c_max: int = 2
) -> Optional[tuple[NList, NList, NList]]:
    """First triple (a, b, c) breaking regularity, scanning small realizable lists.

    Finding nothing is not a proof of regularity.
    """
    for n in range(1, n_max + 1):
        lists = list(realizable_lists(n))
        for a in lists:
            for b in lists:
                for length in range(1, min(len(a), len(b)) + 1):
                    for c in itertools.product(range(1, c_max + 1), repeat=length):
                        if not check_regularity(f, a, b, c):
                            return a, b, c
    return None


# -- gadgets -----------------------------------------------------------------------


@dataclass(frozen=True)
class Gadget:
    kind: str
    graph: Graph
    u0: int
    v0: int
    expected_u0: NList
    expected_v0: NList
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "u0": self.u0,
            "v0": self.v0,
            "expected_u0": list(self.expected_u0),
            "expected_v0": list(self.expected_v0),
            "actual_u0": list(distance_list(self.graph, self.u0)),
            "actual_v0": list(distance_list(self.graph, self.v0)),
            "meta": self.meta,
        }


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def add(self, count: int = 1) -> list[int]:
        ids = list(range(self.n, self.n + count))
        self.n += count
        return ids

    def link(self, a: int, b: int) -> None:
        self.edges.append((a, b))

    def path(self, nodes: Sequence[int]) -> None:
        for a, b in zip(nodes, nodes[1:]):
            self.link(a, b)

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def _shift_core(i: int, j: int) -> tuple[_Builder, list[int], list[int]]:
    if not 2 <= i <= j:
        raise GraphError(f"shift gadget needs 2 <= i <= j, got i={i}, j={j}")
    gb = _Builder()
    u = gb.add(j + 1)
    v = gb.add(j + 1)
    (w,) = gb.add()
    gb.path(u)
    gb.path(v)
    gb.link(u[0], v[0])
    gb.link(u[j - 1], v[j])
    gb.link(v[i - 2], w)
    return gb, u, v


def _core_lists(i: int, j: int) -> tuple[NList, NList]:
    a = tuple(2 + (l == i) + (l == j) for l in range(1, j + 1))
    b = tuple(2 + (l == i - 1) - (l == j + 1) for l in range(1, j + 2))
    return a, b


def build_shift_gadget(i: int, j: int) -> Gadget:
    """Two ladder-like paths from adjacent u0, v0 whose distance lists differ by one shift (i, j)."""
    gb, u, v = _shift_core(i, j)
    a, b = _core_lists(i, j)
    return Gadget("shift", gb.graph(), u[0], v[0], a, b, {"i": i, "j": j})


def caterpillar(counts: Sequence[int]) -> Graph:
    """Tree rooted at node 0 with ``counts[t-1]`` nodes at distance t."""
    if any(c < 1 for c in counts):
        raise GraphError(f"caterpillar needs positive layer counts, got {tuple(counts)}")
    gb = _Builder()
    (spine,) = gb.add()
    for c in counts:
        nxt, *leaves = gb.add(c)
        gb.link(spine, nxt)
        for leaf in leaves:
            gb.link(spine, leaf)
        spine = nxt
    return gb.graph()


def build_shift_gadget_extended(
    a: Sequence[int], i: int, j: int, tail: Optional[Graph] = None, tail_root: int = 0
) -> Gadget:
    """Realize ``a`` at u0 and ``shift_step(a, i, j)`` at v0 with u0 ~ v0.

    Layers up to j are padded with nodes adjacent to both u_{l-1} and v_{l-1};
    layers past j come from ``tail`` glued at v_j (a caterpillar by default).
    """
    a = tuple(a)
    if j > len(a):
        raise GraphError(f"j={j} exceeds list length {len(a)}")
    b = shift_step(a, i, j)
    short = [l for l in range(1, j + 1) if min(a[l - 1], b[l - 1]) < 2]
    if short:
        raise GraphError(
            f"positions {short} hold fewer than two nodes on one side; add an all-ones list first"
        )
    core_a, _ = _core_lists(i, j)
    gb, u, v = _shift_core(i, j)
    for l in range(1, j + 1):
        for x in gb.add(a[l - 1] - core_a[l - 1]):
            gb.link(x, u[l - 1])
            gb.link(x, v[l - 1])
    rest = a[j:]
    tail_kind = "given"
    if tail is None:
        tail, tail_root, tail_kind = caterpillar(rest), 0, "caterpillar"
    if tuple(distance_list(tail, tail_root)) != rest:
        raise GraphError(f"tail realizes {tuple(distance_list(tail, tail_root))}, need {rest}")
    ids = {tail_root: v[j]}
    for x in range(tail.n):
        if x != tail_root:
            ids[x] = gb.add()[0]
    for x, y in tail.edges:
        gb.link(ids[x], ids[y])
    return Gadget(
        "shift-ext", gb.graph(), u[0], v[0], a, b, {"i": i, "j": j, "tail": tail_kind}
    )


def build_minimal_gadget(S: int, n: int) -> Gadget:
    """Adjacent u0, v0 with lists bot(S, n) + c and bot(S+1, n) + c, c all ones of length j.

    u0 walks a path u_0..u_k; v0 walks v_0..v_{j-1} and joins the u path at u_j;
    a pendant w hangs on u_{j-1}; fan nodes touch both u0 and v0.
    """
    if n < 1 or not n <= S < n * (n + 1) // 2:
        raise GraphError(f"minimal gadget needs n <= S < n(n+1)/2, got S={S}, n={n}")
    bot = canonical_bot(S, n)
    nxt = canonical_bot(S + 1, n)
    counts, k, j = bot.counts, bot.k, bot.j
    c = (1,) * j
    gb = _Builder()
    u = gb.add(k + 1)
    v = gb.add(j)
    (w,) = gb.add()
    # at j = 1 the pendant sits next to u0 itself and takes one fan slot
    fan = gb.add(counts[0] - 1 if j >= 2 else counts[0] - 2)
    gb.path(u)
    gb.path(v)
    gb.link(u[0], v[0])
    gb.link(v[j - 1], u[j])
    gb.link(w, u[j - 1])
    for z in fan:
        gb.link(z, u[0])
        gb.link(z, v[0])
    return Gadget(
        "minimal",
        gb.graph(),
        u[0],
        v[0],
        list_add(counts, c),
        list_add(nxt.counts, c),
        {"S": S, "n": n, "k": k, "j": j},
    )
