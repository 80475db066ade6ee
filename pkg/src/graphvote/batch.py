"""Vectorized tree kernels for the exhaustive suites.

Every labeled tree on n nodes is a Prüfer sequence; a block of sequences is
decoded at once and all quantities are integer arrays indexed ``[tree, ...]``.
Nothing here is approximate: hitting times come from a floating solve that is
rounded and then certified by an exact integer residual check.
"""

from __future__ import annotations

import numpy as np

from .graph import GraphError


def prufer_block(n: int, start: int, stop: int) -> np.ndarray:
    """Sequences number ``start..stop-1`` in itertools.product order."""
    idx = np.arange(start, stop, dtype=np.int64)
    length = max(n - 2, 0)
    out = np.empty((len(idx), length), dtype=np.int64)
    for pos in range(length - 1, -1, -1):
        out[:, pos] = idx % n
        idx //= n
    return out


def tree_count(n: int) -> int:
    return 1 if n <= 2 else n ** (n - 2)


def _sign(x: np.ndarray) -> np.ndarray:
    return np.sign(x).astype(np.int8)


class TreeBatch:
    """Decoded block of labeled trees; derived arrays are computed on first use."""

    def __init__(self, n: int, seqs: np.ndarray):
        if n < 2:
            raise GraphError("tree batches need n >= 2")
        self.n = n
        self.seqs = seqs
        self.size = len(seqs)
        self._decode()
        self._cache: dict = {}

    def _decode(self) -> None:
        n, B = self.n, self.size
        rows = np.arange(B)
        deg = np.ones((B, n), dtype=np.int64)
        for t in range(self.seqs.shape[1]):
            np.add.at(deg, (rows, self.seqs[:, t]), 1)
        sub = np.ones((B, n), dtype=np.int64)
        parent = np.full((B, n), -1, dtype=np.int64)
        for t in range(self.seqs.shape[1]):
            x = self.seqs[:, t]
            leaf = np.argmax(deg == 1, axis=1)
            parent[rows, leaf] = x
            sub[rows, x] += sub[rows, leaf]
            deg[rows, leaf] = 0
            deg[rows, x] -= 1
        # two nodes remain and the larger one is always n - 1, which becomes the root
        last = np.argmax(deg == 1, axis=1)
        parent[rows, last] = n - 1
        sub[rows, n - 1] += sub[rows, last]
        self.parent = parent
        self.sub = sub

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # child/parent pairs, one per edge: arrays of shape (B, n-1)
    @property
    def edge_children(self) -> np.ndarray:
        return self._cached("ec", lambda: np.broadcast_to(
            np.arange(self.n - 1), (self.size, self.n - 1)))

    @property
    def edge_parents(self) -> np.ndarray:
        return self.parent[:, : self.n - 1]

    def take(self, arr: np.ndarray, idx: np.ndarray) -> np.ndarray:
        """``arr[b, idx[b, j]]`` for a per-tree array."""
        return np.take_along_axis(arr, idx, axis=1)

    def take2(self, arr: np.ndarray, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """``arr[b, i[b, k], j[b, k]]`` for a per-tree matrix."""
        rows = np.arange(self.size)[:, None]
        return arr[rows, i, j]

    @property
    def adjacency(self) -> np.ndarray:
        def build():
            A = np.zeros((self.size, self.n, self.n), dtype=bool)
            rows = np.arange(self.size)[:, None]
            A[rows, self.edge_children, self.edge_parents] = True
            A[rows, self.edge_parents, self.edge_children] = True
            return A
        return self._cached("A", build)

    @property
    def distances(self) -> np.ndarray:
        def build():
            n = self.n
            D = np.where(self.adjacency, 1, n).astype(np.int16)
            D[:, np.arange(n), np.arange(n)] = 0
            for k in range(n):
                np.minimum(D, D[:, :, k, None] + D[:, None, k, :], out=D)
            return D
        return self._cached("D", build)

    @property
    def farness(self) -> np.ndarray:
        return self._cached("far", lambda: self.distances.sum(axis=2, dtype=np.int64))

    @property
    def net(self) -> np.ndarray:
        """``net[b, u, v]``: voters strictly closer to u than to v."""
        def build():
            D = self.distances
            return (D[:, :, :, None] < D[:, :, None, :]).sum(axis=1, dtype=np.int16)
        return self._cached("net", build)

    @property
    def verdict(self) -> np.ndarray:
        """Sign of Net(u, v) - Net(v, u)."""
        return self._cached("verdict", lambda: _sign(self.net - self.net.transpose(0, 2, 1)))

    @property
    def beats(self) -> np.ndarray:
        return self.verdict > 0

    @property
    def winner(self) -> np.ndarray:
        """Condorcet winner per tree, -1 when there is none."""
        def build():
            full = self.beats.sum(axis=2) == self.n - 1
            return np.where(full.any(axis=1), np.argmax(full, axis=1), -1)
        return self._cached("winner", build)

    @property
    def subtree(self) -> np.ndarray:
        """``T[b, x, r] = |{w : d(w, r) = d(w, x) + d(x, r)}|``; equals n on the diagonal."""
        def build():
            D = self.distances
            hit = D[:, :, None, :] == D[:, :, :, None] + D[:, None, :, :]
            return hit.sum(axis=1, dtype=np.int16)
        return self._cached("T", build)

    def top_is(self, farness_like: np.ndarray, node: np.ndarray) -> np.ndarray:
        """Whether ``node`` alone minimizes the given inverse score, per tree."""
        best = farness_like == farness_like.min(axis=1, keepdims=True)
        rows = np.arange(self.size)
        return (best.sum(axis=1) == 1) & best[rows, np.maximum(node, 0)]

    # -- preference structure ---------------------------------------------------

    def transitive(self) -> np.ndarray:
        R = self.beats.astype(np.int16)
        two_step = np.matmul(R, R) > 0
        return ~(two_step & ~self.beats).any(axis=(1, 2))

    def acyclic(self) -> np.ndarray:
        C = self.beats.astype(np.int16)
        steps = 1
        while steps < self.n:
            C = ((C + np.matmul(C, C)) > 0).astype(np.int16)
            steps *= 2
        return ~np.diagonal(C, axis1=1, axis2=2).any(axis=1)

    def structural_levels(self) -> np.ndarray:
        T = self.subtree
        # the diagonal entry n always counts as a majority, hence the -1
        return (2 * T > self.n).sum(axis=1) - 1

    def middle_nodes(self) -> np.ndarray:
        D = self.distances
        half = (D + 1) // 2
        on = (D[:, :, None, :] == half[:, :, :, None]) & (
            D.transpose(0, 2, 1)[:, None, :, :] == (D - half)[:, :, :, None]
        )
        # on[b, u, v, w]: w at distance ceil(d/2) from u and the rest from v
        return np.argmax(on, axis=3)

    def structural_verdict(self) -> np.ndarray:
        """Verdict from levels and middle-node subtree sizes; 2 marks a non-total pair."""
        n = self.n
        lev = self.structural_levels()
        M = self.middle_nodes()
        T = self.subtree
        rows = np.arange(self.size)[:, None, None]
        us = np.arange(n)[None, :, None]
        vs = np.arange(n)[None, None, :]
        t_u = T[rows, M, us]
        t_v = T[rows, M, vs]
        lu, lv = lev[:, :, None], lev[:, None, :]
        weak = (lu < lv) | ((lu == lv) & (t_u <= t_v))
        weak_back = weak.transpose(0, 2, 1)
        out = np.full(weak.shape, 2, dtype=np.int8)
        out[weak & weak_back] = 0
        out[weak & ~weak_back] = 1
        out[~weak & weak_back] = -1
        return out

    def next_hops(self) -> np.ndarray:
        """``N[b, u, v]``: neighbor of u on the path to v (u itself when u == v)."""
        D = self.distances
        step = self.adjacency[:, :, None, :] & (
            D.transpose(0, 2, 1)[:, None, :, :] == (D - 1)[:, :, :, None]
        )
        N = np.argmax(step, axis=3)
        N[:, np.arange(self.n), np.arange(self.n)] = np.arange(self.n)
        return N

    def moving_closer(self) -> np.ndarray:
        D = self.distances
        N = self.next_hops()
        V = self.verdict
        rows = np.arange(self.size)[:, None, None]
        inner = V[rows, N, N.transpose(0, 2, 1)]
        return ~((D >= 3) & (inner != V)).any(axis=(1, 2))

    # -- random walks -------------------------------------------------------------

    @property
    def hitting(self) -> np.ndarray:
        """``H[b, u, v]`` exact as int64."""
        def build():
            n, B = self.n, self.size
            A = self.adjacency.astype(np.int64)
            deg = A.sum(axis=2)
            L = -A
            L[:, np.arange(n), np.arange(n)] = deg
            H = np.zeros((B, n, n), dtype=np.int64)
            for t in range(n):
                keep = np.array([x for x in range(n) if x != t])
                Lt = L[:, keep][:, :, keep]
                rhs = deg[:, keep]
                x = np.rint(np.linalg.solve(Lt.astype(np.float64), rhs[:, :, None].astype(np.float64)))
                x = x.astype(np.int64)
                # the reduced Laplacian of a tree is unimodular, so the exact answer is integral
                if not np.array_equal(np.matmul(Lt, x)[:, :, 0], rhs):
                    raise ArithmeticError(f"hitting-time certificate failed for target {t}")
                H[:, keep, t] = x[:, :, 0]
            return H
        return self._cached("H", build)

    @property
    def rw_farness(self) -> np.ndarray:
        return self._cached("rwf", lambda: self.hitting.sum(axis=1))

    # -- LT lists ---------------------------------------------------------------------

    def _lt_sorted(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n
        T = self.subtree.astype(np.int64)
        eye = np.eye(n, dtype=bool)[None]
        big = (2 * T > n) & ~eye
        vals = np.where(big, T, 0).transpose(0, 2, 1)  # [b, v, x]
        return np.sort(vals, axis=2), big.sum(axis=1)

    def w_inverse(self) -> np.ndarray:
        """sum_i t_i n^(k+1-i) per node, with 1 for an empty list."""
        n = self.n
        s, k = self._lt_sorted()
        # zeros pad the front, so slot p carries exponent n - p
        weights = np.array([n ** (n - p) for p in range(n)], dtype=np.int64)
        inv = (s * weights).sum(axis=2)
        return np.where(k == 0, 1, inv)

    def shortlex_key(self) -> np.ndarray:
        """Integer key ordering LT lists by length, then lexicographically."""
        n = self.n
        s, k = self._lt_sorted()
        base = n + 1
        # move each list to the front so that t_1 is the most significant digit
        pos = np.arange(n)[None, None, :]
        src = pos + (n - k)[:, :, None]
        valid = src < n
        left = np.where(valid, np.take_along_axis(s, np.minimum(src, n - 1), axis=2), 0)
        digits = np.array([base ** (n - 1 - p) for p in range(n)], dtype=np.int64)
        return k.astype(np.int64) * base ** n + (left * digits).sum(axis=2)
