"""Command-line front end for the dispersion solver suite.

Exit codes: 0 success/accept, 1 reject or infeasible, 2 usage or input
error, 3 resource guard tripped (candidate cap or timeout).
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from .certify import parse_certificate, verify_certificate
from .core import format_graph, format_witness, parse_graph, subdivide
from .dispatch import disp
from .errors import (
    GraphFormatError,
    NPHardRegimeError,
    OracleTimeoutError,
    SizeGuardExceededError,
)
from .gadget import build_gadget, format_gadget_map
from .oracle import DEFAULT_CANDIDATE_CAP, brute_disp

_DELTA_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def _parse_delta(text: str) -> Fraction:
    match = _DELTA_RE.match(text.strip())
    if not match:
        raise argparse.ArgumentTypeError(
            f"delta must be a positive integer or fraction 'a/b', got {text!r}"
        )
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if num == 0 or den == 0:
        raise argparse.ArgumentTypeError("delta must be positive")
    return Fraction(num, den)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltadisp",
        description="Exact dispersion numbers for unit-edge graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="dispersion number via the best exact algorithm")
    solve.add_argument("graph", type=Path)
    solve.add_argument("--delta", type=_parse_delta, required=True)
    solve.add_argument("--witness", type=Path, help="write the witness to this file")
    solve.add_argument(
        "--brute-force",
        action="store_true",
        help="allow the exponential oracle for numerators >= 3",
    )
    solve.add_argument("--cap", type=int, default=DEFAULT_CANDIDATE_CAP)
    solve.add_argument("--timeout", type=float, default=None)

    oracle = sub.add_parser("oracle", help="brute-force value and witness")
    oracle.add_argument("graph", type=Path)
    oracle.add_argument("--delta", type=_parse_delta, required=True)
    oracle.add_argument("--witness", type=Path, help="write the witness to this file")
    oracle.add_argument("--cap", type=int, default=DEFAULT_CANDIDATE_CAP)
    oracle.add_argument("--timeout", type=float, default=None)

    verify = sub.add_parser("verify", help="check a certificate file")
    verify.add_argument("graph", type=Path)
    verify.add_argument("--delta", type=_parse_delta, required=True)
    verify.add_argument("--certificate", type=Path, required=True)

    gadget = sub.add_parser("gadget", help="emit a hard instance from a cubic graph")
    gadget.add_argument("graph", type=Path)
    gadget.add_argument("--delta", type=_parse_delta, required=True)
    gadget.add_argument("--out", default="gadget", help="output file prefix")

    subdiv = sub.add_parser("subdivide", help="emit the c-subdivision of a graph")
    subdiv.add_argument("graph", type=Path)
    subdiv.add_argument("--factor", type=int, required=True)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        graph = parse_graph(args.graph.read_text())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GraphFormatError as exc:
        print(f"error: {args.graph}: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "solve":
            value, witness = disp(
                graph,
                args.delta,
                allow_bruteforce=args.brute_force,
                cap=args.cap,
                timeout=args.timeout,
            )
            print(value)
            if args.witness:
                args.witness.write_text(format_witness(graph, witness))
            return 0

        if args.command == "oracle":
            value, witness = brute_disp(graph, args.delta, cap=args.cap, timeout=args.timeout)
            print(value)
            text = format_witness(graph, witness)
            if args.witness:
                args.witness.write_text(text)
            else:
                sys.stdout.write(text)
            return 0

        if args.command == "verify":
            try:
                k, cert = parse_certificate(args.certificate.read_text())
            except (OSError, GraphFormatError) as exc:
                print(f"error: {args.certificate}: {exc}", file=sys.stderr)
                return 2
            verdict = verify_certificate(graph, args.delta, cert, k)
            if verdict.accepted:
                print("accept")
                return 0
            print(f"reject: {verdict.reason}")
            return 1

        if args.command == "gadget":
            inst = build_gadget(graph, args.delta)
            Path(f"{args.out}.graph").write_text(format_graph(inst.g))
            Path(f"{args.out}.map").write_text(format_gadget_map(inst))
            c = inst.coeffs
            per_edge = 2 * c.y1 + c.y2
            print(
                f"x1={c.x1} y1={c.y1} x2={c.x2} y2={c.y2} parity={c.parity} "
                f"source_edges={inst.h_edge_count}"
            )
            print(
                f"predicted bound: k + (2*{c.y1} + {c.y2}) * {inst.h_edge_count}"
                f" = k + {per_edge * inst.h_edge_count}"
            )
            print(f"wrote {args.out}.graph and {args.out}.map")
            return 0

        if args.command == "subdivide":
            if args.factor < 1:
                print("error: --factor must be >= 1", file=sys.stderr)
                return 2
            bigger, _ = subdivide(graph, args.factor)
            sys.stdout.write(format_graph(bigger))
            return 0

    except NPHardRegimeError as exc:
        print(f"error: {exc} (use --brute-force)", file=sys.stderr)
        return 2
    except (SizeGuardExceededError, OracleTimeoutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
