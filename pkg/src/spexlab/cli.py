"""Command-line interface: ``spexlab <subcommand> ...``.

Reports are JSON on stdout with a ``schema`` field, the tool version and a
full echo of the parameters.  Real numbers of high precision are written as
decimal strings.  Nothing is random, so repeated runs print identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from . import constructions as C
from .families import (
    verify_bounded_order,
    verify_lower_bounds,
    verify_spec_compare,
    verify_subcase_k1,
    verify_walk_lemma,
)
from .forbid import find_path, has_fan, longest_path_order
from .graph import Graph, GraphError, graph6_decode, graph6_encode
from .polynomial import IntPolynomial, RootInterval, largest_real_root
from .search import spex_bruteforce, verify_theorem
from .spectral import (
    EXACT_MAX_ORDER,
    UndecidedComparison,
    equitable_quotient,
    rho_polynomial,
    spectral_radius,
)
from .walks import walk_compare_detail, walk_profile

SCHEMA = "spexlab/1"
DIGITS = 30


class UsageError(Exception):
    """Bad arguments detected after parsing (exit code 2)."""


# -- serialisation -----------------------------------------------------------


def decimal_string(x, digits: int = DIGITS) -> str:
    if isinstance(x, RootInterval):
        return x.to_decimal(digits)
    if isinstance(x, Fraction):
        return RootInterval(IntPolynomial((1,)), x, x).to_decimal(digits) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def poly_json(p: IntPolynomial) -> dict:
    return {"coeffs_ascending": [str(c) for c in p.coeffs], "text": str(p)}


def interval_json(r: RootInterval) -> dict:
    return {"value": r.to_decimal(DIGITS), "lo": str(r.lo), "hi": str(r.hi), "exact": r.exact}


def _plain(obj):
    """Recursively convert report objects into JSON-ready values."""
    if isinstance(obj, RootInterval):
        return interval_json(obj)
    if isinstance(obj, IntPolynomial):
        return poly_json(obj)
    if isinstance(obj, Fraction):
        return decimal_string(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Graph):
        return graph6_encode(obj)
    if is_dataclass(obj):
        return {f: _plain(getattr(obj, f)) for f in obj.__dataclass_fields__}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _plain(obj.tolist())
    return obj


def envelope(command: str, params: dict, result) -> dict:
    return {"schema": SCHEMA, "version": __version__, "command": command, "params": params, "result": _plain(result)}


def emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, ensure_ascii=False, sort_keys=False, indent=2))
    out.write("\n")


def emit_csv(rows: list[dict], out) -> None:
    if not rows:
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _plain(v) for k, v in row.items()})
    out.write(buf.getvalue())


# -- graph input ---------------------------------------------------------------


def read_graphs(path: str | None, stdin) -> list[Graph]:
    text = open(path, encoding="ascii").read() if path else stdin.read()
    lines = [ln.strip() for ln in text.splitlines()]
    return [graph6_decode(ln) for ln in lines if ln]


def graph_argument(arg: str) -> Graph:
    """A file path (first graph6 line) or an inline graph6 string."""
    if os.path.exists(arg):
        graphs = read_graphs(arg, None)
        if len(graphs) != 1:
            raise GraphError(f"{arg}: expected exactly one graph, found {len(graphs)}")
        return graphs[0]
    return graph6_decode(arg)


# -- constructions table -----------------------------------------------------------

CONSTRUCTORS: dict[str, tuple[int, Callable[..., Graph | list[Graph]]]] = {
    "empty": (1, C.empty),
    "complete": (1, C.complete),
    "path": (1, C.path),
    "cycle": (1, C.cycle),
    "star": (1, C.star),
    "matching": (1, C.matching),
    "turan": (2, C.turan),
    "fan": (1, C.fan),
    "qstar": (1, C.q_star),
    "qdoublestar": (0, C.q_double_star),
    "nearly-minimal": (1, lambda k: C.nearly_regular_minimal_parts(k).graph),
    "regular": (2, C.regular_graph),
    "spread": (2, C.regular_spread),
    "vfamily": (2, C.nearly_regular_v_family),
    "spex-candidate": (2, C.spex_candidate),
}


# -- subcommands ---------------------------------------------------------------------


def cmd_construct(args, out, stdin) -> int:
    if args.name not in CONSTRUCTORS:
        raise UsageError(f"unknown construction {args.name!r}; choose from {', '.join(CONSTRUCTORS)}")
    arity, fn = CONSTRUCTORS[args.name]
    if len(args.params) != arity:
        raise UsageError(f"{args.name} takes {arity} integer parameter(s)")
    result = fn(*args.params)
    graphs = result if isinstance(result, list) else [result]
    for g in graphs:
        out.write(graph6_encode(g) + "\n")
    return 0


def cmd_forbid(args, out, stdin) -> int:
    graphs = read_graphs(args.file, stdin)
    rows = []
    for g in graphs:
        row = {"graph6": graph6_encode(g), "n": g.n}
        if args.path is not None:
            w = find_path(g, args.path)
            row["contains_path"] = w is not None
            row["path_witness"] = w
        if args.fan is not None:
            row["contains_fan"] = has_fan(g, args.fan)
        if args.longest:
            row["longest_path_order"] = longest_path_order(g)
        rows.append(row)
    params = {"path": args.path, "fan": args.fan, "longest": args.longest, "file": args.file}
    if args.csv:
        emit_csv([{k: v for k, v in r.items() if k != "path_witness"} for r in rows], out)
    else:
        emit(envelope("forbid", params, rows), out)
    return 0


def cmd_rho(args, out, stdin) -> int:
    rows = []
    for g in read_graphs(args.file, stdin):
        res = spectral_radius(g, args.tol)
        row = {"graph6": graph6_encode(g), "n": g.n, "rho": repr(res.rho), "residual": repr(res.residual),
               "method": "power-iteration"}
        if args.exact:
            try:
                root = largest_real_root(rho_polynomial(g))
            except UndecidedComparison:
                row["exact"] = None
            else:
                row["rho"] = root.to_decimal(DIGITS)
                row["method"] = "exact-charpoly-sturm" if g.n <= EXACT_MAX_ORDER else "exact-quotient-sturm"
        rows.append(row)
    params = {"tol": args.tol, "exact": args.exact, "file": args.file}
    if args.csv:
        emit_csv(rows, out)
    else:
        emit(envelope("rho", params, rows), out)
    return 0


def parse_partition(parts: Sequence[str]) -> list[list[int]]:
    out = []
    for p in parts:
        try:
            out.append([int(v) for v in p.split(",") if v.strip() != ""])
        except ValueError as exc:
            raise UsageError(f"bad partition part {p!r}") from exc
    return out


def cmd_quotient(args, out, stdin) -> int:
    graphs = read_graphs(args.file, stdin)
    partition = parse_partition(args.partition)
    results = []
    for g in graphs:
        q = equitable_quotient(g, partition)
        p = q.char_poly()
        root = largest_real_root(p)
        res = spectral_radius(g)
        results.append({
            "graph6": graph6_encode(g),
            "matrix": [[decimal_string(x) for x in row] for row in q.entries],
            "part_sizes": list(q.part_sizes),
            "charpoly": poly_json(p),
            "largest_root": interval_json(root),
            "rho_power_iteration": repr(res.rho),
            "agreement": repr(abs(res.rho - float(root))),
        })
    emit(envelope("quotient", {"partition": partition, "file": args.file}, results), out)
    return 0


def cmd_walks(args, out, stdin) -> int:
    if args.upto < 1:
        raise UsageError("--upto must be >= 1")
    rows = []
    for g in read_graphs(args.file, stdin):
        prof = walk_profile(g, args.upto)
        rows.append({"graph6": graph6_encode(g), "totals": list(prof.totals)})
    if args.csv:
        flat = []
        for r in rows:
            item = {"graph6": r["graph6"]}
            item.update({f"W{l + 1}": w for l, w in enumerate(r["totals"])})
            flat.append(item)
        emit_csv(flat, out)
    else:
        emit(envelope("walks", {"upto": args.upto, "file": args.file}, rows), out)
    return 0


def cmd_walkcmp(args, out, stdin) -> int:
    g1, g2 = graph_argument(args.first), graph_argument(args.second)
    cmp = walk_compare_detail(g1, g2)
    result = {"ordering": cmp.ordering, "first_diff_level": cmp.first_diff_level, "gap": cmp.gap,
              "cutoff": cmp.cutoff, "first": graph6_encode(g1), "second": graph6_encode(g2)}
    emit(envelope("walkcmp", {"first": graph6_encode(g1), "second": graph6_encode(g2)}, result), out)
    return 0


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    env = os.environ.get("SPEXLAB_JOBS", "")
    return int(env) if env.strip() else 1


def certificate_json(cert, timing: bool) -> dict:
    stats = {"graphs_enumerated": cert.stats.graphs_enumerated, "graphs_pruned": cert.stats.graphs_pruned,
             "shortlist": cert.stats.shortlist}
    if timing:
        stats["wall_time"] = repr(cert.stats.wall_time)
    return {"n": cert.n, "ell": cert.ell, "winners": cert.winners, "rho": interval_json(cert.rho),
            "charpoly": poly_json(cert.charpoly), "stats": stats}


def cmd_spex(args, out, stdin) -> int:
    cert = spex_bruteforce(args.n, args.ell, long_run=args.long_run, jobs=_jobs(args))
    params = {"n": args.n, "ell": args.ell, "long_run": args.long_run}
    emit(envelope("spex", params, certificate_json(cert, args.timing)), out)
    return 0


def cmd_verify(args, out, stdin) -> int:
    rep = verify_theorem(args.n, args.ell, long_run=args.long_run, jobs=_jobs(args))
    result = {
        "row": rep.row,
        "status": rep.status,
        "candidates": rep.candidates,
        "winners": [_plain(w) for w in rep.winners],
        "certificate": certificate_json(rep.certificate, args.timing),
    }
    emit(envelope("verify", {"n": args.n, "ell": args.ell, "long_run": args.long_run}, result), out)
    return 0


LEMMAS = {
    "bounded-order": lambda a: verify_bounded_order(a.k, a.n),
    "walk-lemma": lambda a: verify_walk_lemma(a.k, a.n),
    "spec-compare": lambda a: verify_spec_compare(a.k, a.n),
    "lower-bounds": lambda a: verify_lower_bounds(a.k, a.n),
    "subcase-k1": lambda a: verify_subcase_k1(a.n),
}


def cmd_verify_lemma(args, out, stdin) -> int:
    if args.lemma != "subcase-k1" and args.k is None:
        raise UsageError(f"{args.lemma} needs --k")
    rep = LEMMAS[args.lemma](args)
    params = {"lemma": args.lemma, "k": args.k, "n": args.n}
    emit(envelope("verify-lemma", params, rep), out)
    return 0


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spexlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"spexlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("--file", help="graph6 file, one graph per line (default: stdin)")

    sp = sub.add_parser("construct", help="print graph6 of a named construction")
    sp.add_argument("name", help=", ".join(CONSTRUCTORS))
    sp.add_argument("params", nargs="*", type=int)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("forbid", help="path / fan containment")
    with_input(sp)
    sp.add_argument("--path", type=int, help="test for a path on this many vertices")
    sp.add_argument("--fan", type=int, help="test for the fan K_1 v P_ell")
    sp.add_argument("--longest", action="store_true", help="report the longest path order")
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_forbid)

    sp = sub.add_parser("rho", help="spectral radius")
    with_input(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--exact", action="store_true", help="exact root isolation for n <= 16")
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_rho)

    sp = sub.add_parser("quotient", help="equitable quotient matrix")
    with_input(sp)
    sp.add_argument("--partition", nargs="+", required=True, metavar="V,V,...",
                    help="one comma-separated vertex list per part")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("walks", help="walk totals W^1..W^L")
    with_input(sp)
    sp.add_argument("--upto", type=int, required=True)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_walks)

    sp = sub.add_parser("walkcmp", help="walk-sequence ordering of two graphs")
    sp.add_argument("first", help="graph6 string or file")
    sp.add_argument("second", help="graph6 string or file")
    sp.set_defaults(func=cmd_walkcmp)

    for name, func, helptext in (("spex", cmd_spex, "brute-force SPEX(n, H_ell)"),
                                 ("verify", cmd_verify, "compare brute force with the characterisation")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--ell", type=int, required=True)
        sp.add_argument("--long-run", action="store_true", help="allow n = 9, 10")
        sp.add_argument("--jobs", type=int, default=None, help="worker processes (default $SPEXLAB_JOBS or 1)")
        sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify-lemma", help="desk-scale lemma checks")
    sp.add_argument("lemma", choices=sorted(LEMMAS))
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_verify_lemma)
    return p


def main(argv: Sequence[str] | None = None, out=None, stdin=None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, stdin)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spexlab: error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, ValueError, ArithmeticError, OSError) as exc:
        emit({"schema": SCHEMA, "version": __version__, "command": args.command,
              "error": {"type": type(exc).__name__, "message": str(exc)}}, out)
        return 1


run = main
