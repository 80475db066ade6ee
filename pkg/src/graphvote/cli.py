"""Command-line entry point. Every command prints one JSON document.

Exit codes: 0 success, 1 violation found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import canonical
from .centrality import parse_delta
from .condorcet import condorcet_report
from .fixtures import FIXTURE_NAMES, fixture
from .graph import Graph, GraphError, is_tree, parse_edge_list, to_edge_list
from .verify import AXIOMS, MEASURES, TREE_CAP, run_graph_suite, run_tree_suite, search_counterexample

OK, VIOLATION, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": message}), file=sys.stdout)
        raise SystemExit(USAGE)


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=False))


def _read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edge_list(text)


def _delta(text: str):
    # "0.8" is read exactly as 4/5 so that ties stay exact
    try:
        return parse_delta(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphError(f"bad delta {text!r}: {exc}") from None


def _measure(name: str, g: Graph, delta):
    if name == "w" and not is_tree(g):
        raise GraphError("the w measure is defined on trees only")
    return MEASURES[name](g, delta)


def cmd_centrality(args) -> int:
    g = _read_graph(args.file)
    scores = _measure(args.measure, g, args.delta)
    _emit({"n": g.n, **scores.to_json()})
    return OK


def cmd_condorcet(args) -> int:
    g = _read_graph(args.file)
    names = args.measures.split(",") if args.measures else [
        m for m in MEASURES if m != "w" or is_tree(g)]
    unknown = [m for m in names if m not in MEASURES]
    if unknown:
        raise GraphError(f"unknown measure(s): {', '.join(unknown)}")
    report = condorcet_report(g, {m: _measure(m, g, args.delta) for m in names})
    _emit(report.to_json())
    return OK


def cmd_verify(args) -> int:
    if args.trees is not None:
        report = run_tree_suite(args.trees, rwc_n_max=args.rwc_n_max, backend=args.backend,
                                workers=args.workers)
    else:
        report = run_graph_suite(samples=args.samples, n_max=args.n_max, seed=args.seed,
                                 rwc_samples=args.rwc_samples)
    _emit(report.to_json())
    return OK if report.passed else VIOLATION


def cmd_search(args) -> int:
    found = search_counterexample(
        args.measure, args.axiom, generator=args.generator, n_min=args.n_min,
        n_max=args.n_max, edge_prob=args.edge_prob, budget=args.budget, seed=args.seed,
        delta=args.delta,
    )
    params = {"measure": args.measure, "axiom": args.axiom, "generator": args.generator,
              "n_min": args.n_min, "n_max": args.n_max, "budget": args.budget, "seed": args.seed}
    if found is None:
        _emit({"found": False, "params": params})
        return OK
    _emit({"found": True, "params": params, **found.to_json()})
    return VIOLATION


def cmd_fixture(args) -> int:
    fx = fixture(args.name)
    if args.emit == "edges":
        sys.stdout.write(to_edge_list(fx.graph, f"{fx.name}: {fx.note}" if fx.note else fx.name))
    else:
        _emit(fx.to_json())
    return OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise GraphError(f"expected comma-separated integers, got {text!r}") from None


def cmd_gadget(args) -> int:
    if args.kind == "shift":
        gadget = canonical.build_shift_gadget(args.i, args.j)
    elif args.kind == "shift-ext":
        if args.list is None:
            raise GraphError("shift-ext needs --list")
        gadget = canonical.build_shift_gadget_extended(_int_list(args.list), args.i, args.j)
    else:
        if args.sum is None or args.n is None:
            raise GraphError("minimal needs --sum and --n")
        gadget = canonical.build_minimal_gadget(args.sum, args.n)
    edges = to_edge_list(gadget.graph, f"{gadget.kind} gadget, u0={gadget.u0}, v0={gadget.v0}")
    sidecar = gadget.to_json()
    if args.out:
        Path(args.out).write_text(edges)
        Path(args.out + ".json").write_text(json.dumps(sidecar, indent=2) + "\n")
    _emit({"edge_list": edges, "sidecar": sidecar})
    return OK


def cmd_canonical(args) -> int:
    if args.reduce:
        result, trace = canonical.reduce_to_canonical(_int_list(args.reduce))
        doc = {"input": list(_int_list(args.reduce)), "trace": [list(t) for t in trace]}
    else:
        if args.sum is None or args.n is None:
            raise GraphError("canonical needs --sum and --n, or --reduce")
        result, doc = canonical.canonical_bot(args.sum, args.n), {}
    _emit({"counts": list(result.counts), "S": result.S, "n": result.n, "k": result.k,
           "j": result.j, **doc})
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphvote", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("centrality", help="score every node with one measure")
    p.add_argument("file", help="edge-list file, or - for stdin")
    p.add_argument("--measure", choices=sorted(MEASURES), default="closeness")
    p.add_argument("--delta", type=_delta, default=Fraction(4, 5), help="decay factor (default 0.8)")
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("condorcet", help="winner, weak winners, cycle and per-measure consistency")
    p.add_argument("file")
    p.add_argument("--measures", help="comma-separated subset of measures")
    p.add_argument("--delta", type=_delta, default=Fraction(4, 5))
    p.set_defaults(func=cmd_condorcet)

    p = sub.add_parser("verify", help="run a verification suite")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--trees", type=int, metavar="N", help=f"all labeled trees up to N (max {TREE_CAP})")
    which.add_argument("--graphs", action="store_true", help="random connected graphs plus fixtures")
    p.add_argument("--rwc-n-max", type=int, default=8)
    p.add_argument("--backend", choices=("numpy", "reference"), default="numpy")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--rwc-samples", type=int, default=300)
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="look for a graph where a measure breaks an axiom")
    p.add_argument("--measure", choices=sorted(MEASURES), required=True)
    p.add_argument("--axiom", choices=AXIOMS, required=True)
    p.add_argument("--generator", choices=("trees", "graphs"), default="trees")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=11)
    p.add_argument("--edge-prob", type=float)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=_delta, default=Fraction(4, 5))
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("fixture", help="print a named example graph")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.add_argument("--emit", choices=("edges", "json"), default="json")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("gadget", help="build a gadget graph with marked nodes u0, v0")
    p.add_argument("--kind", choices=("shift", "shift-ext", "minimal"), required=True)
    p.add_argument("--i", type=int, default=2)
    p.add_argument("--j", type=int, default=4)
    p.add_argument("--list", help="comma-separated list for shift-ext")
    p.add_argument("--sum", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out", help="also write the edge list here and the sidecar to OUT.json")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("canonical", help="canonical list for a sum, or the reduction trace of a list")
    p.add_argument("--sum", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--reduce", help="comma-separated list to reduce")
    p.set_defaults(func=cmd_canonical)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        _emit({"error": str(exc), "type": type(exc).__name__})
        return USAGE


if __name__ == "__main__":
    raise SystemExit(main())
