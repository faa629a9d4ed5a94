"""Command-line interface.

Commands: ``matrix``, ``count``, ``list``, ``poly``, ``ribbon`` and ``check``.

Exit codes
    0 success, 2 parse error, 3 size cap exceeded, 4 integer overflow,
    5 disconnected ribbon graph, 6 invalid quasi-tree, 7 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from . import matrices
from .core import Bouquet, RibbonGraph, format_subset, parse_signed_rotation
from .errors import (
    DeterminantOverflow,
    MalformedRibbonGraph,
    NotAQuasiTree,
    NotConnected,
    ParseError,
    SizeCapExceeded,
)
from .matrices import SYMBOLIC_CAP, format_matrix, symbolic_skew_adjacency, unsymbolic
from .quasitree import METHODS, QuasiTreeReport, default_cap, quasi_tree_polynomial, quasi_trees_via_partial_dual
from .topology import find_spanning_quasi_tree
from .verify import run_checks

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_OVERFLOW = 4
EXIT_DISCONNECTED = 5
EXIT_INVALID_T = 6
EXIT_VERIFY = 7

UNLIMITED = 1 << 30


def _read_source(source: str) -> str:
    if source != "-" and os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read().strip()
    if source == "-":
        return sys.stdin.read().strip()
    return source


def _parse_subset(text: str) -> list[int]:
    cleaned = text.strip().strip("{}[]()")
    tokens = [t for t in cleaned.replace(",", " ").split() if t]
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"bad subset {text!r}") from exc


def _caps(args: argparse.Namespace) -> tuple[int, int]:
    if args.force:
        return UNLIMITED, UNLIMITED
    cap = args.cap if args.cap is not None else default_cap()
    return cap, SYMBOLIC_CAP


def _report(b: Bouquet, args: argparse.Namespace, method: str | None = None) -> QuasiTreeReport:
    cap, scap = _caps(args)
    return quasi_tree_polynomial(b, method or args.method, cap=cap, symbolic_cap=scap)


def cmd_matrix(args: argparse.Namespace, out: TextIO) -> int:
    b = Bouquet(parse_signed_rotation(_read_source(args.rotation)))
    if args.format == "json":
        print(matrices.matrices_json(b), file=out)
        return EXIT_OK
    s = symbolic_skew_adjacency(b)
    print("symbolic skew-adjacency matrix:", file=out)
    print(format_matrix(s.rows_str()), file=out)
    print("unsymbolic skew-adjacency matrix:", file=out)
    print(format_matrix(unsymbolic(s).tolist()), file=out)
    print("adjacency matrix (GF(2)):", file=out)
    print(format_matrix(matrices.adjacency(b).tolist()), file=out)
    return EXIT_OK


def cmd_count(args: argparse.Namespace, out: TextIO) -> int:
    b = Bouquet(parse_signed_rotation(_read_source(args.rotation)))
    r = _report(b, args)
    if args.format == "json":
        print(json.dumps({"schema": 1, "method": r.method, "tau": r.tau}), file=out)
    else:
        print(r.tau, file=out)
    return EXIT_OK


def cmd_list(args: argparse.Namespace, out: TextIO) -> int:
    b = Bouquet(parse_signed_rotation(_read_source(args.rotation)))
    r = _report(b, args)
    if args.format == "json":
        print(json.dumps({"schema": 1, "method": r.method, "tau": r.tau,
                          "feasible": [list(s) for s in r.feasible_sets()]}), file=out)
    else:
        for m in r.feasible:
            print(format_subset(m), file=out)
    return EXIT_OK


def cmd_poly(args: argparse.Namespace, out: TextIO) -> int:
    b = Bouquet(parse_signed_rotation(_read_source(args.rotation)))
    r = _report(b, args)
    integer = r.integer_poly
    if args.integer and integer is None:
        integer = _report(b, args, "integer").integer_poly
    if args.format == "json":
        data = {"schema": 1, "method": r.method, "tau": r.tau, "mod2_poly": r.mod2_poly.to_pairs()}
        if args.integer:
            data["integer_poly"] = integer.to_pairs()
        print(json.dumps(data), file=out)
    else:
        print(f"mod 2: {r.mod2_poly.to_text()}", file=out)
        if args.integer:
            print(f"integer: {integer.to_text()}", file=out)
    return EXIT_OK


def cmd_ribbon(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = RibbonGraph.from_json(_read_source(args.file))
    if not g.is_connected():
        print(f"error: ribbon graph is disconnected ({len(g.components())} components)", file=err)
        return EXIT_DISCONNECTED
    cap, _ = _caps(args)
    if args.quasi_tree is not None:
        t = _parse_subset(args.quasi_tree)
    else:
        t = find_spanning_quasi_tree(g, cap=cap)
    r = quasi_trees_via_partial_dual(g, t, method=args.method, cap=cap)
    if args.format == "json":
        print(json.dumps(r.to_dict()), file=out)
    else:
        print(f"quasi-tree T: {format_subset(r.twist)}", file=out)
        print(f"bouquet: {r.bouquet}", file=out)
        print(f"tau: {r.tau}", file=out)
        for m in r.feasible:
            print(format_subset(m), file=out)
    return EXIT_OK


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    summary = run_checks(args.count, args.n, args.p, args.seed)
    if args.format == "json":
        print(json.dumps(summary.to_dict()), file=out)
    else:
        print(summary.to_text(), file=out)
    return EXIT_OK if summary.failed == 0 else EXIT_VERIFY


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasitrees",
        description="Spanning quasi-trees of bouquets and ribbon graphs from skew-adjacency determinants.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=None, help="enumeration cap on n (default 26 or $QUASITREE_CAP)")
    common.add_argument("--force", action="store_true", help="ignore size caps")
    common.add_argument("--method", choices=METHODS, default="gf2")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("matrix", "print the symbolic, unsymbolic and GF(2) matrices"),
        ("count", "print the number of spanning quasi-trees"),
        ("list", "print the spanning quasi-trees"),
        ("poly", "print the quasi-tree polynomial"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("rotation", help="signed rotation, e.g. '[-1a, 2a, 1b, 2b]', or a file holding one")
        if name == "poly":
            p.add_argument("--integer", action="store_true", help="also print pre-mod-2 coefficients")

    p = sub.add_parser("ribbon", parents=[common], help="quasi-trees of a ribbon graph given as JSON")
    p.add_argument("file", help="ribbon graph JSON file ('-' for stdin)")
    p.add_argument("--quasi-tree", dest="quasi_tree", default=None, help="spanning quasi-tree T, e.g. '{1,3}'")

    p = sub.add_parser("check", parents=[common], help="randomised matrix-vs-topology cross-check")
    p.add_argument("--seed", type=_seed, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "ribbon":
            return cmd_ribbon(args, out, err)
        handler = {
            "matrix": cmd_matrix,
            "count": cmd_count,
            "list": cmd_list,
            "poly": cmd_poly,
            "check": cmd_check,
        }[args.command]
        return handler(args, out)
    except ParseError as exc:
        print(f"error: {exc.diagnostic()}", file=err)
        return EXIT_PARSE
    except MalformedRibbonGraph as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except SizeCapExceeded as exc:
        print(f"error: {exc} (use --cap or --force)", file=err)
        return EXIT_CAP
    except DeterminantOverflow as exc:
        print(f"error: {exc}", file=err)
        return EXIT_OVERFLOW
    except NotConnected as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DISCONNECTED
    except NotAQuasiTree as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID_T


if __name__ == "__main__":
    sys.exit(main())
