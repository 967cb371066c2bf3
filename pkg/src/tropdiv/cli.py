"""Command-line front end.

Exit status: 0 on success (or when a checked identity holds), 1 when a
checked identity fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import divisor as dv
from . import graph as gr
from . import rank as rk
from . import tropical as tp
from .io import GraphDocument, parse_divisor, parse_graph, parse_tropical_divisor, serialize_graph

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


def _load(path: str) -> GraphDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise gr.InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text, source=path)


def _emit(args, fields: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(fields, sort_keys=True, default=str))
    else:
        for line in text_lines:
            print(line)


def _rr_lines(rep: rk.RiemannRochReport) -> list[str]:
    return [
        f"r(D) = {rep.rank}",
        f"r(K-D) = {rep.rank_residual}",
        f"deg D = {rep.degree}",
        f"g = {rep.genus}",
        f"r(D) - r(K-D) = {rep.lhs}",
        f"deg D - g + 1 = {rep.rhs}",
        "Riemann-Roch holds" if rep.holds else "Riemann-Roch FAILS",
    ]


def cmd_rank(args) -> int:
    doc = _load(args.graph)
    G = doc.multigraph
    D = parse_divisor(args.divisor, G.vertices)
    if args.mode == "plain":
        res = rk.rank_plain(G, D)
    elif args.mode == "sharp":
        res = rk.rank_sharp(G, D)
    else:
        res = rk.rank_weighted(doc.weighted_graph, D)
    witness = dv.format_divisor(res.witness) if res.witness is not None else None
    _emit(
        args,
        {"rank": res.rank, "mode": args.mode, "witness": witness},
        [f"rank = {res.rank}", f"mode = {args.mode}", f"witness = {witness}"],
    )
    return EXIT_OK


def cmd_reduce(args) -> int:
    G = _load(args.graph).multigraph
    D = parse_divisor(args.divisor, G.vertices)
    q = args.q or G.vertices[0]
    R = dv.q_reduce(G, D, q)
    _emit(args, {"q": q, "reduced": dv.format_divisor(R)}, [f"{q}-reduced: {dv.format_divisor(R)}"])
    return EXIT_OK


def cmd_equiv(args) -> int:
    G = _load(args.graph).multigraph
    D = parse_divisor(args.divisor, G.vertices)
    D2 = parse_divisor(args.other, G.vertices)
    eq = dv.is_equivalent(G, D, D2, method=args.method)
    _emit(args, {"equivalent": eq, "method": args.method}, ["equivalent" if eq else "not equivalent"])
    return EXIT_OK


def cmd_jacobian(args) -> int:
    G = _load(args.graph).multigraph
    jac = dv.jacobian(G)
    _emit(args, {"invariant_factors": list(jac.invariant_factors), "order": jac.order}, [str(jac)])
    return EXIT_OK


def cmd_canonical(args) -> int:
    GW = _load(args.graph).weighted_graph
    K = rk.canonical(GW)
    _emit(args, {"canonical": dv.format_divisor(K), "degree": K.degree}, [f"K = {dv.format_divisor(K)}"])
    return EXIT_OK


def cmd_rr_check(args) -> int:
    doc = _load(args.graph)
    GW = doc.weighted_graph
    D = parse_divisor(args.divisor, GW.vertices)
    rep = rk.riemann_roch_check(GW, D)
    _emit(args, rep.as_dict(), _rr_lines(rep))
    return EXIT_OK if rep.holds else EXIT_CHECK_FAILED


def _parse_counts(text: str) -> dict[int, int]:
    out = {}
    for item in text.split(","):
        k, sep, v = item.partition(":")
        if not sep:
            raise gr.InputError(f"bad count {item!r}; expected '<edge index>:<n>'")
        try:
            out[int(k)] = int(v)
        except ValueError:
            raise gr.InputError(f"bad count {item!r}; expected '<edge index>:<n>'") from None
    return out


def _print_graph(args, H: gr.Multigraph | gr.WeightedGraph) -> None:
    text = serialize_graph(H)
    if args.json:
        G = H.graph if isinstance(H, gr.WeightedGraph) else H
        print(json.dumps({"vertices": list(G.vertices), "edges": [list(e) for e in G.edges]}, sort_keys=True))
    else:
        sys.stdout.write(text)


def cmd_subdivide(args) -> int:
    G = _load(args.graph).multigraph
    if (args.n is None) == (args.counts is None):
        raise gr.InputError("give exactly one of -n or --counts")
    counts = args.n if args.n is not None else _parse_counts(args.counts)
    H, _ = gr.subdivide(G, counts)
    _print_graph(args, H)
    return EXIT_OK


def cmd_hat(args) -> int:
    H, _ = gr.hat(_load(args.graph).multigraph)
    _print_graph(args, H)
    return EXIT_OK


def cmd_virtual(args) -> int:
    H, _ = gr.virtual_graph(_load(args.graph).weighted_graph)
    _print_graph(args, H)
    return EXIT_OK


def _epsilon(text: str):
    if "," in text:
        return [Fraction(x) for x in text.split(",")]
    return Fraction(text)


def cmd_tropical_rank(args) -> int:
    curve = _load(args.graph).tropical_curve()
    D = parse_tropical_divisor(args.divisor, curve.graph.vertices)
    D.check_on(curve)
    model_curve, _ = tp.epsilon_model(curve, _epsilon(args.epsilon))
    model = tp.discretize(model_curve, D, granularity=args.granularity, budget=args.budget)
    r = rk.rank_plain(model.graph, model.divisor, candidates=model.rank_determining).rank
    _emit(
        args,
        {"rank": r, "model_vertices": len(model.graph.vertices), "model_edges": len(model.graph.edges)},
        [f"rank = {r}", f"model = {len(model.graph.vertices)} vertices, {len(model.graph.edges)} edges"],
    )
    return EXIT_OK


def cmd_tropical_rr_check(args) -> int:
    curve = _load(args.graph).tropical_curve()
    D = parse_tropical_divisor(args.divisor, curve.graph.vertices)
    rep = tp.tropical_rr_check(
        curve, D, epsilon=_epsilon(args.epsilon), granularity=args.granularity, budget=args.budget
    )
    _emit(args, rep.as_dict(), _rr_lines(rep))
    return EXIT_OK if rep.holds else EXIT_CHECK_FAILED


def cmd_pseudo(args) -> int:
    doc = _load(args.graph)
    if args.direction == "to":
        out = tp.to_pseudo_metric(doc.tropical_curve())
    else:
        out = tp.from_pseudo_metric(doc.pseudo_metric())
    if args.json:
        G = out.graph
        fields = {
            "vertices": list(G.vertices),
            "edges": [list(e) for e in G.edges],
            "lengths": [str(x) for x in out.length],
        }
        if isinstance(out, tp.TropicalCurve):
            fields["weights"] = dict(out.base.weight)
        print(json.dumps(fields, sort_keys=True))
    else:
        sys.stdout.write(serialize_graph(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropdiv", description="Divisors on weighted graphs and tropical curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, divisor=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("-g", "--graph", required=True, help="graph file")
        if divisor:
            p.add_argument("-D", "--divisor", required=True, help="divisor, e.g. 'v0:1,v1:-1'")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("rank", cmd_rank, "rank of a divisor", divisor=True)
    p.add_argument("--mode", choices=("plain", "sharp", "weighted"), default="weighted")
    p = add("reduce", cmd_reduce, "q-reduced form", divisor=True)
    p.add_argument("-q", help="base vertex (default: first vertex)")
    p = add("equiv", cmd_equiv, "linear equivalence test", divisor=True)
    p.add_argument("-E", "--other", required=True, help="second divisor")
    p.add_argument("--method", choices=("reduce", "snf"), default="reduce")
    add("jacobian", cmd_jacobian, "Jacobian group structure")
    add("canonical", cmd_canonical, "canonical divisor of the weighted graph")
    add("rr-check", cmd_rr_check, "verify Riemann-Roch for a divisor", divisor=True)
    p = add("subdivide", cmd_subdivide, "subdivide edges")
    p.add_argument("-n", type=int, help="vertices inserted in every edge")
    p.add_argument("--counts", help="per-edge counts, e.g. '0:1,2:3'")
    add("hat", cmd_hat, "insert a vertex in every loop")
    add("virtual", cmd_virtual, "replace vertex weights by loops")
    for name, func, help in (
        ("tropical-rank", cmd_tropical_rank, "rank on a weighted tropical curve"),
        ("tropical-rr-check", cmd_tropical_rr_check, "verify Riemann-Roch on a tropical curve"),
    ):
        p = add(name, func, help, divisor=True)
        p.add_argument("--epsilon", default="1", help="virtual loop length, or comma list per loop")
        p.add_argument("--granularity", type=int, default=1, help="unit edges per model length unit")
        p.add_argument("--budget", type=int, default=tp.DEFAULT_BUDGET, help="max model vertices")
    p = add("pseudo", cmd_pseudo, "weighted tropical curve <-> pseudo-metric graph")
    p.add_argument("--direction", choices=("to", "from"), default="to")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (gr.InputError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
