"""Undirected simple graphs over contiguous node ids, shortest-path distances,
bridges, subtree sizes, and tree/graph generators."""

from __future__ import annotations

import heapq
import itertools
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

# Distance entry for node pairs with no connecting path.
UNREACHABLE = None

DEFAULT_TREE_CAP = 9


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    """Edge-list text could not be parsed; ``line`` is 1-based."""

    def __init__(self, kind: str, line: int, detail: str):
        self.kind = kind
        self.line = line
        super().__init__(f"line {line}: {kind}: {detail}")


class DisconnectedGraphError(GraphError):
    pass


class NotATreeError(GraphError):
    pass


class NotABridgeError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for u, nbrs in enumerate(self.adj):
            prev = -1
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise GraphError(f"neighbor id {v} of node {u} out of range")
                if v == u:
                    raise GraphError(f"self-loop at node {u}")
                if v <= prev:
                    raise GraphError(f"neighbors of node {u} not strictly sorted")
                prev = v
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u not in self.adj[v]:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has id outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def distances(self) -> tuple[tuple[Optional[int], ...], ...]:
        return tuple(tuple(_bfs(self, s)) for s in range(self.n))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges})"


DistanceMatrix = tuple[tuple[Optional[int], ...], ...]


class DistanceList(tuple):
    """Counts of nodes at distance 1, 2, ..., k from a node.

    Behaves as a plain tuple of counts; ``unreachable`` holds the number of
    nodes with no path to the source (these are excluded from the counts).
    """

    unreachable: int

    def __new__(cls, counts: Iterable[int], unreachable: int = 0):
        obj = super().__new__(cls, counts)
        obj.unreachable = unreachable
        return obj

    def __repr__(self) -> str:
        tail = f", unreachable={self.unreachable}" if self.unreachable else ""
        return f"DistanceList({tuple(self)}{tail})"


@dataclass(frozen=True)
class BridgeSplit:
    side_u: frozenset[int]
    side_v: frozenset[int]


# -- parsing / serialization -------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments."""
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("malformed", lineno, f"expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("malformed", lineno, f"non-integer token in {raw!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("malformed", lineno, "negative header value")
            header = (a, b)
            continue
        n = header[0]
        if a < 0 or b < 0 or a >= n or b >= n:
            raise ParseError("id-out-of-range", lineno, f"node id must be in 0..{n - 1}")
        if a == b:
            raise ParseError("self-loop", lineno, f"edge ({a}, {b})")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError("duplicate-edge", lineno, f"edge ({a}, {b}) already declared")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError("malformed", last_line, "missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError(
            "edge-count", last_line, f"header declares {header[1]} edges, found {len(edges)}"
        )
    return Graph.from_edges(header[0], edges)


def to_edge_list(g: Graph, comment: Optional[str] = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# -- distances ---------------------------------------------------------------


def _bfs(g: Graph, source: int) -> list[Optional[int]]:
    dist: list[Optional[int]] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] is None:
                dist[w] = du
                queue.append(w)
    return dist


def _check_node(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"node {v} out of range for n={g.n}")


def bfs_distances(g: Graph, source: int) -> list[Optional[int]]:
    _check_node(g, source)
    return list(g.distances[source])


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    return g.distances


def distance_list(g: Graph, v: int) -> DistanceList:
    _check_node(g, v)
    row = g.distances[v]
    reach = [d for d in row if d is not None]
    k = max(reach)
    counts = [0] * k
    for d in reach:
        if d:
            counts[d - 1] += 1
    return DistanceList(counts, unreachable=g.n - len(reach))


def is_connected(g: Graph) -> bool:
    return g.n == 0 or all(d is not None for d in g.distances[0])


def require_connected(g: Graph, what: str = "operation") -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"{what} requires a connected graph")


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def require_tree(g: Graph, what: str = "operation") -> None:
    if not is_tree(g):
        raise NotATreeError(f"{what} requires a tree")


# -- bridges and subtrees ----------------------------------------------------


def _component(g: Graph, start: int, cut: tuple[int, int]) -> set[int]:
    a, b = cut
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if (x == a and y == b) or (x == b and y == a):
                continue
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def bridge_split(g: Graph, u: int, v: int) -> BridgeSplit:
    _check_node(g, u)
    _check_node(g, v)
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    side_u = _component(g, u, (u, v))
    if v in side_u:
        raise NotABridgeError(f"edge ({u}, {v}) is not a bridge")
    side_v = _component(g, v, (u, v))
    if len(side_u) + len(side_v) != g.n:
        raise DisconnectedGraphError("bridge split requires a connected graph")
    return BridgeSplit(frozenset(side_u), frozenset(side_v))


def bridges(g: Graph) -> list[tuple[int, int]]:
    """All bridges as (u, v) with u < v, via iterative low-link DFS."""
    order = [-1] * g.n
    low = [0] * g.n
    found = []
    counter = 0
    for root in range(g.n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            x, parent, it = stack[-1]
            for y in it:
                if y == parent:
                    continue
                if order[y] == -1:
                    order[y] = low[y] = counter
                    counter += 1
                    stack.append((y, x, iter(g.adj[y])))
                    break
                low[x] = min(low[x], order[y])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[x])
                    if low[x] > order[parent]:
                        found.append((min(x, parent), max(x, parent)))
    return sorted(found)


def subtree_size(g: Graph, u: int, v: int) -> int:
    """Number of nodes whose path to ``v`` passes through ``u`` (``u`` included)."""
    require_tree(g, "subtree_size")
    _check_node(g, u)
    _check_node(g, v)
    if u == v:
        raise GraphError("subtree_size needs two distinct nodes")
    dist = g.distances
    duv = dist[u][v]
    return sum(1 for w in range(g.n) if dist[w][v] == dist[w][u] + duv)


# -- generators --------------------------------------------------------------


def prufer_to_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    if n == 1:
        return []
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def enumerate_trees(n: int, cap: int = DEFAULT_TREE_CAP) -> Iterator[Graph]:
    """Every labeled tree on ``n`` nodes, once each, in Prüfer-sequence order."""
    if n < 1:
        raise GraphError("tree enumeration needs n >= 1")
    if n > cap:
        raise GraphError(f"n={n} exceeds the enumeration cap {cap}")
    for seq in itertools.product(range(n), repeat=max(n - 2, 0)):
        yield Graph.from_edges(n, prufer_to_edges(seq, n))


def random_tree(n: int, rng: random.Random) -> Graph:
    if n < 1:
        raise GraphError("random_tree needs n >= 1")
    seq = [rng.randrange(n) for _ in range(max(n - 2, 0))]
    return Graph.from_edges(n, prufer_to_edges(seq, n))


def random_connected_graph(n: int, edge_prob: float, seed: int) -> Graph:
    """Uniform random spanning tree plus each remaining pair with ``edge_prob``."""
    if n < 1:
        raise GraphError("random_connected_graph needs n >= 1")
    if not 0 < edge_prob <= 1:
        raise GraphError("edge_prob must be in (0, 1]")
    rng = random.Random(seed)
    tree = random_tree(n, rng)
    edges = set(tree.edges)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < edge_prob:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``nodes`` relabeled to 0..k-1; also returns the old ids in order."""
    keep = sorted(set(nodes))
    index = {old: new for new, old in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph.from_edges(len(keep), edges), keep


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with node ``v`` renamed to ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
