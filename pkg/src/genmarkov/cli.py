"""Command-line front end.

Every number is printed as a decimal string so that big integers survive any
JSON consumer.  Exit codes: 0 ok, 2 parse/usage, 3 domain, 4 resource limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Iterable

from . import classical as cl
from .errors import DomainError, ResourceLimitError
from .matform import map_A, map_C, map_W
from .perron import MarkedPeriodicLLS, perron_extremum
from .sail import (adjacent_cone, cone_of_sequence, is_extremal, lls_from_sail,
                   markov_minimum_bruteforce, rotate_back, sail_of_cone,
                   sail_period_bound, sails_to_svg)
from .seqcore import breve, continuant, format_seq, parse_seq, reverse, trace_coefficient
from .surd import Surd
from .triplegraph import (collision_search, enumerate_gen_markov, enumerate_nodes,
                          farey_root, farey_sigma, markov_root, markov_sigma,
                          matrix_root, matrix_sigma, monotonicity_check, node_to_json,
                          free_generation_check, reconstruct_from_middle,
                          sequence_root, concat_sigma, verify_markov_llsgraph)

EXIT_PARSE, EXIT_DOMAIN, EXIT_RESOURCE = 2, 3, 4

TREE_DEPTH_DEFAULT = 16
COLLISION_DEPTH_DEFAULT = 24


def seq_arg(text: str) -> tuple:
    try:
        return parse_seq(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def triple_arg(text: str) -> tuple:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad triple {text!r}") from exc
    if len(vals) != 3 or min(vals) < 1:
        raise argparse.ArgumentTypeError("a triple is three positive integers a,M,b")
    return vals


def _surd_json(x: Surd, digits: int) -> dict:
    return {"exact": str(x), "decimal": x.to_decimal(digits)}


def _pt(p) -> list:
    return [str(p[0]), str(p[1])]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_continuant(args) -> dict:
    s = args.seq
    return {"sequence": format_seq(s), "K": str(continuant(s)), "breve": str(breve(s)),
            "trace_coefficient": str(trace_coefficient(s))}


def cmd_diagram(args) -> dict:
    s = args.seq
    cert = is_extremal(s)
    return {
        "sequence": format_seq(s),
        "matrix": map_A(s).to_json(),
        "form": str(map_C(s)),
        "form_coefficients": map_C(s).to_json(),
        "spectrum_value": map_W(s).to_json(args.digits),
        "extremal": cert.extremal,
        "minimum": str(cert.minimum),
        "value_at_10": str(cert.value_at_10),
        "witness": _pt(cert.witness),
    }


def cmd_tree(args) -> Iterable[dict]:
    depth, limit = args.depth, args.max_depth or TREE_DEPTH_DEFAULT
    kind = args.kind
    if kind in ("seq", "matrix", "genmarkov") and (args.mu is None or args.nu is None):
        raise DomainError(f"tree {kind} needs --mu and --nu")
    if kind == "farey":
        nodes = enumerate_nodes(farey_root(), farey_sigma, depth, limit)
    elif kind == "markov":
        nodes = enumerate_nodes(markov_root(), markov_sigma, depth, limit)
    elif kind == "seq":
        nodes = enumerate_nodes(sequence_root(args.mu, args.nu), concat_sigma, depth, limit)
    elif kind == "matrix":
        nodes = enumerate_nodes(matrix_root(args.mu, args.nu), matrix_sigma, depth, limit)
    else:
        nodes = enumerate_gen_markov(args.mu, args.nu, depth, limit)
    return (node_to_json(n) for n in nodes)


def cmd_collisions(args) -> dict:
    mu, nu = args.mu, args.nu
    limit = args.max_depth or COLLISION_DEPTH_DEFAULT
    report = verify_markov_llsgraph(mu, nu, min(args.depth, 4))
    if not report.almost_markov and not args.force:
        raise DomainError("seeds do not give an almost-Markov graph (use --force to search anyway)")
    groups = collision_search(mu, nu, args.depth, method=args.method,
                              include_outer=args.include_outer, max_depth=limit)
    return {"mu": format_seq(mu), "nu": format_seq(nu), "depth": str(args.depth),
            "graph": report.to_json(), "groups": [g.to_json(mu, nu) for g in groups]}


def cmd_classical(args) -> dict:
    t = cl.MarkovTriple.from_any(*args.triple)
    out: dict[str, Any] = {"a": str(t.a), "M": str(t.M), "b": str(t.b),
                           "Y": cl.map_Y(t).to_json(args.digits)}
    if t.M == 1:
        out.update(u=None, v=None, period=None, form_S=None, form_markov=None)
        return out
    data = cl.compute_uv(t)
    out.update(u=str(data.u), v=str(data.v), period=format_seq(cl.map_Q(t)),
               form_S=str(cl.map_S(t)), form_markov=str(cl.markov_theorem_form(t.M, t.b, t.a)))
    return out


def cmd_perron(args) -> dict:
    s = args.seq
    m = MarkedPeriodicLLS(s, args.mark)
    value, idx = perron_extremum(m)
    out: dict[str, Any] = {"period": format_seq(s), "mark": str(args.mark),
                           "value": _surd_json(value, args.digits), "argmax_index": str(idx)}
    if len(s) % 2 == 0:
        cert = is_extremal(s)
        out["extremal"] = cert.extremal
        out["matches_spectrum"] = cert.extremal and value == map_W(s).to_surd()
        f = map_C(s)
        brute, wit = markov_minimum_bruteforce(f, args.brute_box)
        out["bruteforce_minimum"] = str(brute)
        out["bruteforce_witness"] = _pt(wit)
    return out


def cmd_sail(args) -> dict:
    s = args.seq
    bound = args.x_bound or sail_period_bound(s)
    rbound = args.x_bound or sail_period_bound(reverse(s))
    main = sail_of_cone(cone_of_sequence(s), bound)
    adj = sail_of_cone(adjacent_cone(s), rbound)
    lls_main, lls_adj = lls_from_sail(main), lls_from_sail(adj)
    cert = is_extremal(s)
    if args.svg:
        sails_to_svg([main.vertices, [rotate_back(p) for p in adj.vertices]], args.svg)
    return {
        "sequence": format_seq(s),
        "cone_10": {"vertices": [_pt(p) for p in main.vertices],
                    "lls": [str(x) for x in lls_main.sequence],
                    "mark": None if lls_main.marked_index is None else str(lls_main.marked_index)},
        "cone_01": {"vertices": [_pt(rotate_back(p)) for p in adj.vertices],
                    "lls": [str(x) for x in lls_adj.sequence],
                    "mark": None if lls_adj.marked_index is None else str(lls_adj.marked_index)},
        "extremal": cert.extremal,
        "minimum": str(cert.minimum),
        "witness": _pt(cert.witness),
    }


def cmd_verify_graph(args) -> dict:
    report = verify_markov_llsgraph(args.mu, args.nu, args.depth,
                                    max_depth=args.max_depth or TREE_DEPTH_DEFAULT)
    out = report.to_json()
    try:
        out["monotone"] = monotonicity_check(args.mu, args.nu, args.depth)
    except DomainError as exc:
        out["monotone"] = f"precondition violated: {exc}"
    out["free"] = free_generation_check(args.mu, args.nu, args.depth)
    return out


def cmd_reconstruct(args) -> dict:
    node = reconstruct_from_middle(args.target, args.mu, args.nu,
                                   max_depth=args.max_depth or 64, method=args.method)
    if node is None:
        return {"target": format_seq(args.target), "found": False}
    out = node_to_json(node)
    out["found"] = True
    return out


# ---------------------------------------------------------------------------
# argument parsing and output
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genmarkov",
                                description="Generalised Markov numbers, forms and sails.")
    p.add_argument("--output", choices=("json", "table"), default="json")
    p.add_argument("--max-depth", type=int, default=None,
                   help="depth limit (default 16 for trees, 24 for collisions)")
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--brute-box", type=int, default=200)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("continuant")
    c.add_argument("seq", type=seq_arg)
    c.set_defaults(func=cmd_continuant)

    c = sub.add_parser("diagram")
    c.add_argument("seq", type=seq_arg)
    c.set_defaults(func=cmd_diagram)

    c = sub.add_parser("tree")
    c.add_argument("kind", choices=("farey", "markov", "seq", "matrix", "genmarkov"))
    c.add_argument("--mu", type=seq_arg)
    c.add_argument("--nu", type=seq_arg)
    c.add_argument("--depth", type=int, default=3)
    c.set_defaults(func=cmd_tree, stream=True)

    c = sub.add_parser("collisions")
    c.add_argument("--mu", type=seq_arg, required=True)
    c.add_argument("--nu", type=seq_arg, required=True)
    c.add_argument("--depth", type=int, default=10)
    c.add_argument("--method", choices=("auto", "exact", "modular"), default="auto")
    c.add_argument("--include-outer", action="store_true")
    c.add_argument("--force", action="store_true")
    c.set_defaults(func=cmd_collisions)

    c = sub.add_parser("classical")
    c.add_argument("--triple", type=triple_arg, required=True)
    c.set_defaults(func=cmd_classical)

    c = sub.add_parser("perron")
    c.add_argument("seq", type=seq_arg)
    c.add_argument("--mark", type=int, default=0)
    c.set_defaults(func=cmd_perron)

    c = sub.add_parser("sail")
    c.add_argument("seq", type=seq_arg)
    c.add_argument("--x-bound", type=int, default=None)
    c.add_argument("--svg", default=None)
    c.set_defaults(func=cmd_sail)

    c = sub.add_parser("verify-graph")
    c.add_argument("--mu", type=seq_arg, required=True)
    c.add_argument("--nu", type=seq_arg, required=True)
    c.add_argument("--depth", type=int, default=4)
    c.set_defaults(func=cmd_verify_graph)

    c = sub.add_parser("reconstruct")
    c.add_argument("target", type=seq_arg)
    c.add_argument("--mu", type=seq_arg, required=True)
    c.add_argument("--nu", type=seq_arg, required=True)
    c.add_argument("--method", choices=("descent", "bfs"), default="descent")
    c.set_defaults(func=cmd_reconstruct)
    return p


def _table(obj: Any, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                        (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{indent}{k}:")
                lines.append(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_flat(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_table(x, indent) if isinstance(x, dict) else f"{indent}- {_flat(x)}"
                         for x in obj)
    return f"{indent}{_flat(obj)}"


def _flat(v: Any) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_flat(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        result = args.func(args)
        if getattr(args, "stream", False):
            for row in result:
                out.write((json.dumps(row) if args.output == "json" else _flat(row)) + "\n")
        elif args.output == "json":
            out.write(json.dumps(result, indent=2) + "\n")
        else:
            out.write(_table(result) + "\n")
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return 0


if __name__ == "__main__":
    sys.exit(main())
