"""Command line driver.

Every subcommand is a thin adapter over the library with stable, canonically
ordered text output, suitable for golden-file comparison.  Exit codes: 0 on
success, 1 on a domain error (reported as a single ``ERROR <Kind>: <detail>``
line), 2 on usage errors.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import DomainError, ParseError
from .fields import Field
from .graphs import (
    canonical_form,
    enumerate_max_degenerate,
    find_isomorphisms,
    graph_from_document,
    graph_to_document,
)
from .kummer import KummerCovering, split_homs
from .puiseux import parse_series
from .ribbon import enumerate_ribbons, rep_matrix, ribbon_from_document, \
    tangential_base_point


def _compact(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _load_graph(path):
    graph = graph_from_document(_load_json(path))
    graph.validate()
    return graph


def _resolve_ribbon(graph, selector):
    ribbons = enumerate_ribbons(graph)
    try:
        index = int(selector)
    except ValueError:
        return ribbon_from_document(_load_json(selector), graph)
    if not 0 <= index < len(ribbons):
        raise DomainError(
            f"ribbon index {index} out of range 0..{len(ribbons) - 1}")
    return ribbons[index]


def _parse_order(text):
    return Fraction(text)


# -- subcommand implementations -------------------------------------------------


def cmd_graphs_enum(ns):
    graphs = enumerate_max_degenerate(ns.genus, ns.legs)
    docs = [graph_to_document(g) for g in graphs]
    if ns.out:
        directory = Path(ns.out)
        directory.mkdir(parents=True, exist_ok=True)
        for i, doc in enumerate(docs):
            (directory / f"graph_{i:03d}.json").write_text(_compact(doc) + "\n")
        return None
    if ns.format == "json":
        return json.dumps(docs, sort_keys=True, indent=2)
    return "\n".join(_compact(doc) for doc in docs)


def cmd_graph_aut(ns):
    graph = _load_graph(ns.file)
    automorphisms = find_isomorphisms(graph, graph)
    if ns.format == "json":
        return json.dumps({
            "order": len(automorphisms),
            "automorphisms": [{"half_edges": {str(k): str(v)
                                              for k, v in a.f1.items()},
                               "vertices": {str(k): str(v)
                                            for k, v in a.f0.items()}}
                              for a in automorphisms],
        }, sort_keys=True, indent=2)
    lines = [f"order {len(automorphisms)}"]
    for a in automorphisms:
        lines.append(" ".join(f"{src}->{dst}" for src, dst in sorted(a.f1.items())))
    return "\n".join(lines)


def cmd_graph_canon(ns):
    graph = _load_graph(ns.file)
    canonical, _ = canonical_form(graph)
    doc = graph_to_document(canonical)
    if ns.format == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    return _compact(doc)


def cmd_ribbon_enum(ns):
    graph = _load_graph(ns.file)
    docs = [r.to_document() for r in enumerate_ribbons(graph)]
    if ns.format == "json":
        return json.dumps(docs, sort_keys=True, indent=2)
    return "\n".join(_compact(doc) for doc in docs)


def cmd_rep(ns):
    graph = _load_graph(ns.file)
    ribbon = _resolve_ribbon(graph, ns.ribbon)
    automorphisms = find_isomorphisms(graph, graph)
    matrices = [rep_matrix(a, ribbon) for a in automorphisms]
    if ns.format == "json":
        return json.dumps({
            "edges": [[str(a), str(b)] for a, b in graph.edges()],
            "matrices": [m.array.tolist() for m in matrices],
        }, sort_keys=True, indent=2)
    lines = ["edges: " + " ".join(f"{a}~{b}" for a, b in graph.edges())]
    for i, matrix in enumerate(matrices):
        lines.append(f"aut {i}")
        lines.extend(matrix.rows())
    return "\n".join(lines)


def cmd_tangent(ns):
    graph = _load_graph(ns.file)
    ribbon = _resolve_ribbon(graph, ns.ribbon)
    point = tangential_base_point(graph, ribbon)
    role = {0: "0", 1: "+1", -1: "-1"}
    if ns.format == "json":
        return json.dumps({
            "coordinates": list(point.coordinates),
            "edges": {name: [str(h) for h in point.node_parameters[e]]
                      for name, e in zip(point.coordinates, point.edge_order)},
            "charts": {str(phi): {str(psi): role[r] for psi, r in chart.items()}
                       for phi, chart in point.charts.items()},
            "divisor": list(point.divisor),
        }, sort_keys=True, indent=2)
    lines = ["coordinates: " + " ".join(point.coordinates)]
    for name, e in zip(point.coordinates, point.edge_order):
        u, v = point.node_parameters[e]
        lines.append(f"edge {name}: {u} {v}")
    for phi in graph.half_edges:
        chart = point.charts[phi]
        parts = " ".join(f"{psi}->{role[chart[psi]]}"
                         for psi in sorted(chart, key=lambda x: chart[x]))
        lines.append(f"chart {phi}: {parts}")
    lines.extend(f"hyperplane {h}" for h in point.divisor)
    return "\n".join(lines)


def cmd_puiseux_root(ns):
    field = Field(ns.char)
    series = parse_series(ns.series, ns.vars, field, ns.denom, ns.order)
    coeff, _, _ = series.decompose_unit_monomial()
    choice = field.principal_nth_root(coeff, ns.degree)
    if choice is None:
        raise DomainError(
            f"leading coefficient {coeff} has no {ns.degree}-th root in {field!r}")
    root = series.nth_root(ns.degree, choice)
    if ns.format == "json":
        return json.dumps({"series": str(root)})
    return str(root)


def cmd_puiseux_eval(ns):
    field = Field(ns.char)
    series = parse_series(ns.series, ns.vars, field, ns.denom, ns.order)
    if ns.format == "json":
        return json.dumps({"series": str(series)})
    return str(series)


def cmd_kummer_split(ns):
    field = Field(ns.char)
    relations = []
    for relation_text in ns.rel:
        radicand_text, _, exponent_text = relation_text.rpartition(":")
        if not radicand_text:
            raise ParseError(
                f"relation {relation_text!r} is not of the form 'series:n'")
        try:
            exponent = int(exponent_text)
        except ValueError:
            raise ParseError(f"relation exponent {exponent_text!r} is not an integer")
        radicand = parse_series(radicand_text, ns.vars, field, ns.denom, ns.order)
        if ns.unit_cofactor:
            cofactor = parse_series(ns.unit_cofactor, ns.vars, field, ns.denom,
                                    ns.order)
            radicand = radicand * cofactor
        relations.append((radicand, exponent))
    covering = KummerCovering(field, ns.vars, ns.order, relations)
    homs = split_homs(covering)
    if ns.format == "json":
        return json.dumps({"homs": [[str(s) for s in h.images] for h in homs]},
                          indent=2)
    return "\n".join(str(h) for h in homs)


# -- argument parsing --------------------------------------------------------------


def _add_series_arguments(parser):
    parser.add_argument("--char", type=int, default=0,
                        help="field characteristic: 0 or a prime")
    parser.add_argument("--vars", type=int, default=1,
                        help="number of variables t1..tm")
    parser.add_argument("--order", type=_parse_order, required=True,
                        help="truncation order (rational, e.g. 3 or 7/2)")
    parser.add_argument("--denom", type=int, default=1,
                        help="root denominator of the input series")
    parser.add_argument("--series", required=True,
                        help="series expression, e.g. '1 + 3/2*t1*t2^(1/2)'")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tangentbase",
        description="Exact Puiseux series, tame Kummer splitting, stable "
                    "graphs and signed edge representations.")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    graphs = sub.add_parser("graphs", help="families of graphs")
    graphs_sub = graphs.add_subparsers(dest="subcommand", required=True)
    enum = graphs_sub.add_parser(
        "enum", help="enumerate maximally degenerate graphs")
    enum.add_argument("--genus", type=int, required=True)
    enum.add_argument("--legs", type=int, required=True)
    enum.add_argument("--out", help="write one document per graph to this directory")
    enum.set_defaults(handler=cmd_graphs_enum)

    graph = sub.add_parser("graph", help="operations on a single graph")
    graph_sub = graph.add_subparsers(dest="subcommand", required=True)
    aut = graph_sub.add_parser("aut", help="list the automorphism group")
    aut.add_argument("file")
    aut.set_defaults(handler=cmd_graph_aut)
    canon = graph_sub.add_parser("canon", help="print the canonical form")
    canon.add_argument("file")
    canon.set_defaults(handler=cmd_graph_canon)

    ribbon = sub.add_parser("ribbon", help="ribbon structures")
    ribbon_sub = ribbon.add_subparsers(dest="subcommand", required=True)
    renum = ribbon_sub.add_parser("enum", help="enumerate ribbon structures")
    renum.add_argument("file")
    renum.set_defaults(handler=cmd_ribbon_enum)

    rep = sub.add_parser(
        "rep", help="signed edge matrices of all automorphisms")
    rep.add_argument("file")
    rep.add_argument("--ribbon", required=True,
                     help="ribbon document path, or an index into 'ribbon enum'")
    rep.set_defaults(handler=cmd_rep)

    tangent = sub.add_parser(
        "tangent", help="coordinates, charts and divisor of a base point")
    tangent.add_argument("file")
    tangent.add_argument("--ribbon", required=True,
                         help="ribbon document path, or an index into 'ribbon enum'")
    tangent.set_defaults(handler=cmd_tangent)

    puiseux = sub.add_parser("puiseux", help="series arithmetic")
    puiseux_sub = puiseux.add_subparsers(dest="subcommand", required=True)
    root = puiseux_sub.add_parser("root", help="principal n-th root of a series")
    root.add_argument("-n", dest="degree", type=int, required=True)
    _add_series_arguments(root)
    root.set_defaults(handler=cmd_puiseux_root)
    evaluate = puiseux_sub.add_parser(
        "eval", help="parse and print the canonical form of a series")
    _add_series_arguments(evaluate)
    evaluate.set_defaults(handler=cmd_puiseux_eval)

    kummer = sub.add_parser("kummer", help="Kummer coverings")
    kummer_sub = kummer.add_subparsers(dest="subcommand", required=True)
    split = kummer_sub.add_parser("split", help="enumerate the splitting homs")
    split.add_argument("--char", type=int, default=0)
    split.add_argument("--vars", type=int, required=True)
    split.add_argument("--order", type=_parse_order, required=True)
    split.add_argument("--denom", type=int, default=1)
    split.add_argument("--rel", action="append", required=True,
                       help="one relation 'series:n'; repeatable")
    split.add_argument("--unit-cofactor", dest="unit_cofactor",
                       help="unit series multiplied onto every radicand")
    split.set_defaults(handler=cmd_kummer_split)

    return parser


def run(argv):
    """Execute one invocation; returns the process exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        output = ns.handler(ns)
    except (DomainError, ValueError) as exc:
        detail = str(exc).replace("\n", " ")
        print(f"ERROR {type(exc).__name__}: {detail}")
        return 1
    if output is not None:
        print(output)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
