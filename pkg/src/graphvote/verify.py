"""Verification suites and counterexample search.

``run_tree_suite`` sweeps every labeled tree up to a size, ``run_graph_suite``
samples random connected graphs and replays the fixtures, and
``search_counterexample`` hunts for a graph on which a measure breaks an axiom.
Reports are plain data and serialize to deterministic JSON.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import batch as nb
from .centrality import (
    ScoreVector,
    closeness,
    compare_scores,
    decay,
    degree,
    eccentricity,
    farness,
    harmonic,
    leaf_zeroed_closeness,
    same_ranking,
)
from .condorcet import (
    Violation,
    check_bridge_axiom,
    check_cc,
    check_condorcet_consistency,
    check_weak_general_cct,
    compare,
    find_condorcet_cycle,
    general_cct_obstruction,
    lt_list,
    net_pair,
    preference_matrix,
    shortlex_compare,
    tree_compare_structural,
    w_measure,
)
from .fixtures import FIXTURE_NAMES, fixture
from .graph import (
    Graph,
    GraphError,
    bridge_split,
    bridges,
    induced_subgraph,
    is_connected,
    is_tree,
    prufer_to_edges,
    random_connected_graph,
    random_tree,
    subtree_size,
    to_edge_list,
)
from .randomwalk import general_bridge_gap, hitting_times, rw_closeness, rw_farness

TREE_CAP = 9
RWC_TREE_CAP = 8
BLOCK = 8192


# -- reports ----------------------------------------------------------------------


def graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


@dataclass
class ClaimResult:
    name: str
    checked: int = 0
    failures: int = 0
    witness: Optional[dict] = None
    # position of the witness in instance order, so merging keeps the earliest one
    witness_key: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, key: tuple, witness: Callable[[], dict]) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.witness_key is None or key < self.witness_key:
                self.witness_key = key
                self.witness = witness()

    def merge(self, other: "ClaimResult") -> None:
        self.checked += other.checked
        self.failures += other.failures
        if other.witness_key is not None and (
            self.witness_key is None or other.witness_key < self.witness_key
        ):
            self.witness_key, self.witness = other.witness_key, other.witness

    def to_json(self) -> dict:
        return {
            "claim": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "failures": self.failures,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    suite: str
    params: dict
    instances: int = 0
    claims: dict = field(default_factory=dict)

    def claim(self, name: str) -> ClaimResult:
        if name not in self.claims:
            self.claims[name] = ClaimResult(name)
        return self.claims[name]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims.values())

    def merge(self, other: "VerificationReport") -> None:
        self.instances += other.instances
        for name, result in other.claims.items():
            self.claim(name).merge(result)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "instances": self.instances,
            "passed": self.passed,
            "claims": [self.claims[k].to_json() for k in sorted(self.claims)],
        }


# -- tree suite: per-tree reference checks ------------------------------------------

BASE_CLAIMS = (
    "condorcet-consistency",
    "preference-transitive",
    "preference-acyclic",
    "closeness-edge-gap",
    "closeness-net-identity",
    "closeness-subtree-sum",
)
RWC_CLAIMS = (
    "structural-criterion",
    "moving-closer",
    "rwc-condorcet-consistency",
    "rwc-hitting-edge",
    "rwc-edge-gap",
    "rwc-subtree-sum",
    "closeness-rwc-same-ranking",
    "w-weak-general-cct",
    "w-shortlex-order",
)


def _tree_edges(g: Graph):
    for u, v in g.edges:
        split = bridge_split(g, u, v)
        yield u, v, len(split.side_u), len(split.side_v)


class _TreeContext:
    """One tree plus its lazily computed election and walk data."""

    def __init__(self, g: Graph):
        self.g = g

    @cached_property
    def pm(self):
        return preference_matrix(self.g)

    @cached_property
    def far(self):
        return farness(self.g)

    @cached_property
    def H(self):
        return hitting_times(self.g)

    @cached_property
    def rwf(self):
        return rw_farness(self.g, self.H)

    @cached_property
    def sizes(self):
        n = self.g.n
        return [[subtree_size(self.g, u, v) if u != v else n for v in range(n)] for u in range(n)]

    @cached_property
    def lt(self):
        return [lt_list(self.g, v) for v in range(self.g.n)]


def _explain_tree(claim: str, g: Graph, measure: Callable[[Graph], ScoreVector],
                  ctx: Optional[_TreeContext] = None) -> Optional[dict]:
    """Detail of the first failure of ``claim`` on ``g`` using only library code, or None."""
    ctx = ctx or _TreeContext(g)
    n = g.n
    pm = ctx.pm
    if claim == "condorcet-consistency":
        bad = check_condorcet_consistency(g, measure(g), pm)
        return bad.to_json() if bad else None
    if claim == "preference-transitive":
        for u in range(n):
            for v in range(n):
                for w in range(n):
                    if pm.beats(u, v) and pm.beats(v, w) and not pm.beats(u, w):
                        return {"triple": [u, v, w]}
        return None
    if claim == "preference-acyclic":
        cycle = find_condorcet_cycle(pm)
        return {"cycle": cycle} if cycle else None
    far = ctx.far
    if claim == "closeness-edge-gap":
        for u, v, su, sv in _tree_edges(g):
            if far[v] - far[u] != su - sv:
                return {"edge": [u, v], "gap": far[v] - far[u], "sides": [su, sv]}
        return None
    if claim == "closeness-net-identity":
        for u, v in g.edges:
            if far[v] - far[u] != pm.net[u][v] - pm.net[v][u]:
                return {"edge": [u, v], "gap": far[v] - far[u], "net": [pm.net[u][v], pm.net[v][u]]}
        return None
    if claim == "closeness-subtree-sum":
        for v in range(n):
            total = sum(ctx.sizes[u][v] for u in range(n) if u != v)
            if total != far[v]:
                return {"node": v, "farness": far[v], "subtree_sum": total}
        return None
    if claim == "structural-criterion":
        for u in range(n):
            for v in range(n):
                if u != v and tree_compare_structural(g, u, v) is not compare(pm, u, v):
                    return {"pair": [u, v], "structural": tree_compare_structural(g, u, v).value,
                            "votes": compare(pm, u, v).value}
        return None
    if claim == "moving-closer":
        dist = g.distances
        for u in range(n):
            for v in range(n):
                if dist[u][v] >= 3:
                    u1 = next(x for x in g.adj[u] if dist[x][v] == dist[u][v] - 1)
                    v1 = next(x for x in g.adj[v] if dist[x][u] == dist[u][v] - 1)
                    if compare(pm, u, v) is not compare(pm, u1, v1):
                        return {"pair": [u, v], "inner": [u1, v1]}
        return None
    H, rwf = ctx.H, ctx.rwf
    if claim == "rwc-condorcet-consistency":
        bad = check_condorcet_consistency(g, rw_closeness(g, H), pm)
        return bad.to_json() if bad else None
    if claim == "rwc-hitting-edge":
        for u, v, su, sv in _tree_edges(g):
            if H[u][v] != 2 * su - 1 or H[v][u] != 2 * sv - 1:
                return {"edge": [u, v], "hitting": [str(H[u][v]), str(H[v][u])], "sides": [su, sv]}
        return None
    if claim == "rwc-edge-gap":
        for u, v, su, sv in _tree_edges(g):
            if rwf[v] - rwf[u] != (su - sv) * (2 * n - 1):
                return {"edge": [u, v], "gap": str(rwf[v] - rwf[u]), "sides": [su, sv]}
        return None
    if claim == "rwc-subtree-sum":
        for v in range(n):
            sizes = [ctx.sizes[u][v] for u in range(n) if u != v]
            total = sum(t * (2 * t - 1) for t in sizes)
            if total != rwf[v]:
                return {"node": v, "rw_farness": str(rwf[v]), "subtree_sum": total}
        return None
    if claim == "closeness-rwc-same-ranking":
        return None if same_ranking(closeness(g), rw_closeness(g, H)) else {"ranking": "differs"}
    if claim == "w-weak-general-cct":
        bad = check_weak_general_cct(g, w_measure(g), pm)
        return bad[0].to_json() if bad else None
    if claim == "w-shortlex-order":
        w = w_measure(g)
        for u in range(n):
            for v in range(n):
                lt_u, lt_v = ctx.lt[u], ctx.lt[v]
                # a smaller LT list means a larger W
                if compare_scores(w[v], w[u]) != shortlex_compare(lt_u, lt_v):
                    return {"pair": [u, v], "lt": [list(lt_u), list(lt_v)]}
        return None
    raise GraphError(f"unknown tree claim {claim!r}")


def _tree_witness(n: int, seq, claim: str, measure) -> dict:
    g = Graph.from_edges(n, prufer_to_edges(list(seq), n))
    detail = _explain_tree(claim, g, measure)
    if detail is None:
        raise AssertionError(f"claim {claim} flagged a tree that the reference check accepts")
    return {"prufer": [int(x) for x in seq], **graph_json(g), "detail": detail}


def _claims_for(n: int, rwc_n_max: int) -> tuple:
    return BASE_CLAIMS + (RWC_CLAIMS if n <= rwc_n_max else ())


def _reference_block(n: int, start: int, stop: int, rwc_n_max: int, measure) -> VerificationReport:
    report = VerificationReport("trees", {})
    claims = _claims_for(n, rwc_n_max)
    for index in range(start, stop):
        seq = [int(x) for x in nb.prufer_block(n, index, index + 1)[0]]
        g = Graph.from_edges(n, prufer_to_edges(seq, n))
        report.instances += 1
        ctx = _TreeContext(g)
        for claim in claims:
            detail = _explain_tree(claim, g, measure, ctx)
            report.claim(claim).record(
                detail is None, (n, index),
                lambda: {"prufer": seq, **graph_json(g), "detail": detail})
    return report


# -- tree suite: vectorized checks ---------------------------------------------------


def _edge_checks(tb: nb.TreeBatch) -> dict:
    n = tb.n
    c, p = tb.edge_children, tb.edge_parents
    sc = tb.sub[:, : n - 1]
    sp = n - sc
    far = tb.farness
    gap = tb.take(far, p) - tb.take(far, c)
    net_cp = tb.take2(tb.net, c, p).astype(np.int64)
    net_pc = tb.take2(tb.net, p, c).astype(np.int64)
    out = {
        "closeness-edge-gap": (gap == sc - sp).all(axis=1),
        "closeness-net-identity": (gap == net_cp - net_pc).all(axis=1),
    }
    T = tb.subtree.astype(np.int64)
    out["closeness-subtree-sum"] = (T.sum(axis=1) - n == far).all(axis=1)
    has = tb.winner >= 0
    out["condorcet-consistency"] = ~has | tb.top_is(far, tb.winner)
    out["preference-transitive"] = tb.transitive()
    out["preference-acyclic"] = tb.acyclic()
    return out


def _rwc_checks(tb: nb.TreeBatch) -> dict:
    n = tb.n
    c, p = tb.edge_children, tb.edge_parents
    sc = tb.sub[:, : n - 1]
    sp = n - sc
    H = tb.hitting
    rwf = tb.rw_farness
    T = tb.subtree.astype(np.int64)
    off = ~np.eye(n, dtype=bool)[None]
    V = tb.verdict
    out = {}
    sv = tb.structural_verdict()
    out["structural-criterion"] = ((sv == V) | ~off).all(axis=(1, 2))
    out["moving-closer"] = tb.moving_closer()
    out["rwc-condorcet-consistency"] = (tb.winner < 0) | tb.top_is(rwf, tb.winner)
    out["rwc-hitting-edge"] = (
        (tb.take2(H, c, p) == 2 * sc - 1) & (tb.take2(H, p, c) == 2 * sp - 1)
    ).all(axis=1)
    gap = tb.take(rwf, p) - tb.take(rwf, c)
    out["rwc-edge-gap"] = (gap == (sc - sp) * (2 * n - 1)).all(axis=1)
    out["rwc-subtree-sum"] = ((T * (2 * T - 1) * off).sum(axis=1) == rwf).all(axis=1)
    far = tb.farness
    s_far = np.sign(far[:, :, None] - far[:, None, :])
    s_rw = np.sign(rwf[:, :, None] - rwf[:, None, :])
    out["closeness-rwc-same-ranking"] = (s_far == s_rw).all(axis=(1, 2))
    winv = tb.w_inverse()
    # u beats v must give W_u > W_v, that is a smaller inverse
    beats = tb.beats
    out["w-weak-general-cct"] = ~(beats & (winv[:, :, None] >= winv[:, None, :])).any(axis=(1, 2))
    key = tb.shortlex_key()
    s_w = np.sign(winv[:, :, None] - winv[:, None, :])
    s_key = np.sign(key[:, :, None] - key[:, None, :])
    out["w-shortlex-order"] = (s_w == s_key).all(axis=(1, 2))
    return out


def _numpy_block(n: int, start: int, stop: int, rwc_n_max: int) -> VerificationReport:
    report = VerificationReport("trees", {})
    seqs = nb.prufer_block(n, start, stop)
    tb = nb.TreeBatch(n, seqs)
    results = _edge_checks(tb)
    if n <= rwc_n_max:
        results.update(_rwc_checks(tb))
    report.instances = tb.size
    for claim in _claims_for(n, rwc_n_max):
        ok = results[claim]
        res = report.claim(claim)
        res.checked += tb.size
        bad = np.flatnonzero(~ok)
        if len(bad):
            res.failures += len(bad)
            first = int(bad[0])
            res.witness_key = (n, start + first)
            res.witness = _tree_witness(n, seqs[first], claim, closeness)
    return report


def _run_block(args) -> VerificationReport:
    backend, n, start, stop, rwc_n_max, measure = args
    if backend == "numpy":
        return _numpy_block(n, start, stop, rwc_n_max)
    return _reference_block(n, start, stop, rwc_n_max, measure)


def run_tree_suite(
    n_max: int,
    rwc_n_max: int = RWC_TREE_CAP,
    backend: str = "numpy",
    measure: Optional[Callable[[Graph], ScoreVector]] = None,
    measure_name: Optional[str] = None,
    workers: int = 1,
    cap: int = TREE_CAP,
) -> VerificationReport:
    """Check the tree claims on every labeled tree with 2 <= n <= n_max.

    A custom ``measure`` replaces closeness in the Condorcet-consistency claim
    and forces the reference backend, since it cannot be vectorized.
    """
    if n_max > cap:
        raise GraphError(f"n_max={n_max} exceeds the tree cap {cap}")
    if backend not in ("numpy", "reference"):
        raise GraphError(f"unknown backend {backend!r}")
    if measure is not None:
        backend = "reference"
    rwc_n_max = min(rwc_n_max, n_max)
    report = VerificationReport("trees", {
        "n_max": n_max,
        "rwc_n_max": rwc_n_max,
        "measure": measure_name or ("closeness" if measure is None else getattr(measure, "__name__", "custom")),
        "backend": backend,
    })
    jobs = []
    for n in range(2, n_max + 1):
        total = nb.tree_count(n)
        for start in range(0, total, BLOCK):
            jobs.append((backend, n, start, min(total, start + BLOCK), rwc_n_max, measure or closeness))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_block, jobs))
    else:
        parts = map(_run_block, jobs)
    for part in parts:
        report.merge(part)
    return report


# -- graph suite ---------------------------------------------------------------------


def _fixture_claims(report: VerificationReport) -> None:
    def check(name: str, ok_detail: Callable[[], tuple[bool, Graph, dict]]) -> None:
        ok, g, detail = ok_detail()
        report.claim(name).record(ok, (0, len(report.claims)),
                                  lambda: {**graph_json(g), "detail": detail})

    for name in FIXTURE_NAMES:
        def load(name=name):
            try:
                fx = fixture(name)
            except GraphError as exc:
                return False, fixture(name, verify=False).graph, {"error": str(exc)}
            return True, fx.graph, {}
        check("fixtures-reverify", load)

    def fig6g():
        fx = fixture("fig6g")
        bad = check_condorcet_consistency(fx.graph, closeness(fx.graph))
        ok = bad is not None and bad.nodes == (fx["u"],) and bad.detail["top"] == [fx["v"]]
        return ok, fx.graph, {"violation": bad.to_json() if bad else None}
    check("closeness-inconsistent-on-fig6g", fig6g)

    def fig2():
        fx = fixture("fig2")
        cycle = find_condorcet_cycle(preference_matrix(fx.graph))
        return cycle is not None, fx.graph, {"cycle": cycle}
    check("condorcet-cycle-on-fig2", fig2)

    def fig1():
        fx = fixture("fig1")
        H = hitting_times(fx.graph)
        u, v = fx["u"], fx["v"]
        bad = check_cc(fx.graph, rw_closeness(fx.graph, H))
        ok = H[u][v] == 17 and H[v][u] == 13 and bool(bad)
        return ok, fx.graph, {"hitting": [str(H[u][v]), str(H[v][u])], "rwc_cc_violations": len(bad)}
    check("rwc-hitting-and-cc-on-fig1", fig1)

    def fig4():
        fx = fixture("fig4")
        bad = check_weak_general_cct(fx.graph, closeness(fx.graph))
        ok = any(x.nodes == (fx["u"], fx["v"]) for x in bad)
        return ok, fx.graph, {"violations": [x.to_json() for x in bad]}
    check("closeness-weak-general-cct-fails-on-fig4", fig4)

    def fig5():
        fx = fixture("fig5")
        triple = general_cct_obstruction(preference_matrix(fx.graph))
        return triple is not None, fx.graph, {"triple": list(triple) if triple else None}
    check("general-cct-obstruction-on-fig5", fig5)


def _edge_nets(g: Graph) -> dict:
    return {(u, v): net_pair(g, u, v) for u, v in g.edges}


def run_graph_suite(
    samples: int = 10_000,
    n_max: int = 30,
    seed: int = 0,
    rwc_samples: int = 300,
    rwc_n_max: int = 12,
) -> VerificationReport:
    """Closeness against the edge-voting identity on random connected graphs,
    the bridge closed form against exact hitting times, and the fixtures."""
    report = VerificationReport("graphs", {
        "samples": samples, "n_max": n_max, "seed": seed,
        "rwc_samples": rwc_samples, "rwc_n_max": rwc_n_max,
    })
    rng = random.Random(seed)
    for index in range(samples):
        n = rng.randint(2, n_max)
        p = rng.uniform(0.02, 0.5)
        gseed = rng.getrandbits(32)
        g = random_connected_graph(n, p, gseed)
        report.instances += 1
        key = (index,)
        where = {"seed": gseed, "edge_prob": p}
        cc = check_cc(g, closeness(g))
        report.claim("closeness-cc").record(
            not cc, key, lambda: {**where, **graph_json(g), "detail": cc[0].to_json()})
        far = farness(g)
        nets = _edge_nets(g)
        bad = [(u, v) for (u, v), (a, b) in nets.items() if far[v] - far[u] != a - b]
        report.claim("closeness-net-identity").record(
            not bad, key, lambda: {**where, **graph_json(g), "detail": {"edges": bad}})
    for index in range(rwc_samples):
        n = rng.randint(2, rwc_n_max)
        p = rng.uniform(0.05, 0.4)
        gseed = rng.getrandbits(32)
        g = random_connected_graph(n, p, gseed)
        report.instances += 1
        rwf = rw_farness(g)
        bad = []
        for u, v in bridges(g):
            closed = general_bridge_gap(g, u, v)
            if rwf[v] - rwf[u] != closed:
                bad.append({"bridge": [u, v], "solver": str(rwf[v] - rwf[u]), "closed_form": closed})
        report.claim("rwc-bridge-gap").record(
            not bad, (samples + index,),
            lambda: {"seed": gseed, "edge_prob": p, **graph_json(g), "detail": bad})
    _fixture_claims(report)
    return report


# -- counterexample search ---------------------------------------------------------------

MEASURES: dict[str, Callable] = {
    "closeness": lambda g, delta: closeness(g),
    "degree": lambda g, delta: degree(g),
    "harmonic": lambda g, delta: harmonic(g),
    "decay": lambda g, delta: decay(g, delta),
    "eccentricity": lambda g, delta: eccentricity(g),
    "rwc": lambda g, delta: rw_closeness(g),
    "w": lambda g, delta: w_measure(g),
    "x": lambda g, delta: leaf_zeroed_closeness(g),
}
TREE_ONLY_MEASURES = {"w"}

AXIOMS = ("condorcet-consistency", "cc", "bridge", "weak-general-cct")
TREE_ONLY_AXIOMS = {"weak-general-cct"}


def axiom_violations(axiom: str, g: Graph, scores: ScoreVector) -> list[Violation]:
    if axiom == "condorcet-consistency":
        bad = check_condorcet_consistency(g, scores)
        return [bad] if bad else []
    if axiom == "cc":
        return check_cc(g, scores)
    if axiom == "bridge":
        return check_bridge_axiom(g, scores)
    if axiom == "weak-general-cct":
        return check_weak_general_cct(g, scores)
    raise GraphError(f"unknown axiom {axiom!r}; known: {', '.join(AXIOMS)}")


@dataclass(frozen=True)
class Witness:
    measure: str
    axiom: str
    seed: int
    instance: int
    original: Graph
    graph: Graph
    violations: tuple

    def to_json(self) -> dict:
        return {
            "measure": self.measure,
            "axiom": self.axiom,
            "seed": self.seed,
            "instance": self.instance,
            "original": graph_json(self.original),
            "witness": graph_json(self.graph),
            "edge_list": to_edge_list(self.graph),
            "violations": [v.to_json() for v in self.violations],
        }


def _minimize(g: Graph, broken: Callable[[Graph], bool], trees: bool) -> Graph:
    """Greedily drop nodes while the graph stays valid and the violation persists."""
    changed = True
    while changed:
        changed = False
        for v in range(g.n - 1, -1, -1):
            h, _ = induced_subgraph(g, [x for x in range(g.n) if x != v])
            if h.n < 2 or not is_connected(h) or (trees and not is_tree(h)):
                continue
            if broken(h):
                g, changed = h, True
                break
    return g


def search_counterexample(
    measure: str,
    axiom: str,
    generator: str = "trees",
    n_min: int = 3,
    n_max: int = 11,
    edge_prob: Optional[float] = None,
    budget: int = 2000,
    seed: int = 0,
    delta=Fraction(4, 5),
    minimize: bool = True,
) -> Optional[Witness]:
    """First generated graph on which ``measure`` breaks ``axiom``, minimized, or None.

    ``generator`` is ``trees`` (random labeled trees) or ``graphs`` (random
    tree plus extra edges, each with ``edge_prob``, drawn per instance when None).
    """
    if measure not in MEASURES:
        raise GraphError(f"unknown measure {measure!r}; known: {', '.join(MEASURES)}")
    if axiom not in AXIOMS:
        raise GraphError(f"unknown axiom {axiom!r}; known: {', '.join(AXIOMS)}")
    if generator not in ("trees", "graphs"):
        raise GraphError(f"unknown generator {generator!r}")
    trees = generator == "trees"
    if not trees and (measure in TREE_ONLY_MEASURES or axiom in TREE_ONLY_AXIOMS):
        raise GraphError(f"{measure}/{axiom} is only defined on trees")
    if not 2 <= n_min <= n_max:
        raise GraphError("need 2 <= n_min <= n_max")
    score = MEASURES[measure]

    def broken(g: Graph) -> bool:
        return bool(axiom_violations(axiom, g, score(g, delta)))

    rng = random.Random(seed)
    for instance in range(budget):
        n = rng.randint(n_min, n_max)
        if trees:
            g = random_tree(n, rng)
        else:
            p = edge_prob if edge_prob is not None else rng.uniform(0.05, 0.9)
            g = random_connected_graph(n, p, rng.getrandbits(32))
        if not broken(g):
            continue
        small = _minimize(g, broken, trees) if minimize else g
        found = axiom_violations(axiom, small, score(small, delta))
        if not found:
            raise AssertionError("minimized witness no longer violates the axiom")
        return Witness(measure, axiom, seed, instance, g, small, tuple(found))
    return None
