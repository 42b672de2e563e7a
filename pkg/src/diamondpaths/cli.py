"""Command-line interface.

Exit status: 0 success, 1 verification found counterexamples, 2 usage or
parse error, 3 precondition error. Diagnostics go to stderr prefixed "error:".
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
from typing import Any, Sequence, TextIO

from . import __version__
from .connectivity import max_edge_disjoint_paths, max_independent_paths, oracle_max_independent
from .construct import find_three_independent, find_two_independent
from .diamond import diamond_counts, generate_diamond
from .errors import GraphError, ParseError, PreconditionError
from .experiments import (
    DEFAULT_SCAN_ORDER,
    Report,
    f_table,
    verify_lemma1,
    verify_lemma2,
    verify_oracle,
    verify_two_paths,
)
from .graph import DOT, EDGE_LIST, STRUCTURED, Graph, parse_graph, serialize_graph

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
MAX_DOT_ORDER = 4
THREADS_ENV = "DIAMONDPATHS_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="graph file (default: standard input)")
    p.add_argument("--input-format", choices=[EDGE_LIST, STRUCTURED], default=EDGE_LIST)
    p.add_argument("--collapse", action="store_true", help="merge repeated edges instead of rejecting them")


def _add_workers(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=int, default=None,
                   help=f"scan parallelism (default: ${THREADS_ENV}, else serial)")
    p.add_argument("--timing", action="store_true", help="print wall-clock duration to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diamondpaths", description="Disjoint paths, diamond graphs and f(k).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("diamond", help="generate the recursive diamond graph G_p")
    d.add_argument("--order", type=int, required=True)
    mode = d.add_mutually_exclusive_group()
    mode.add_argument("--format", choices=[EDGE_LIST, STRUCTURED, DOT], default=None)
    mode.add_argument("--counts-only", action="store_true")

    paths = sub.add_parser("paths", help="maximum disjoint path systems")
    kinds = paths.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    ed = kinds.add_parser("edge-disjoint")
    ed.add_argument("--source", required=True)
    ed.add_argument("--sink", required=True)
    _add_input(ed)
    ind = kinds.add_parser("independent")
    ind.add_argument("--from", dest="u", required=True)
    ind.add_argument("--to", dest="v", required=True)
    _add_input(ind)

    con = sub.add_parser("construct", help="extract 2 or 3 independent paths from edge-disjoint ones")
    con.add_argument("count", choices=["two", "three"])
    con.add_argument("--source", required=True)
    con.add_argument("--sink", required=True)
    _add_input(con)

    ver = sub.add_parser("verify", help="verification experiments")
    which = ver.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    l1 = which.add_parser("lemma1")
    l1.add_argument("--trials", type=int, default=1000)
    l1.add_argument("--seed", type=int, default=0)
    l1.add_argument("--n", type=int, default=60, help="largest instance size")
    l1.add_argument("--n-min", type=int, default=5)
    l1.add_argument("--extra", default="0,0.05,0.2", help="comma-separated extra edge fractions")
    l1.add_argument("--k", type=int, default=3, help="number of planted paths")
    _add_workers(l1)
    two = which.add_parser("two-paths")
    two.add_argument("--trials", type=int, default=500)
    two.add_argument("--seed", type=int, default=0)
    two.add_argument("--n", type=int, default=60)
    two.add_argument("--extra", default="0,0.05,0.2")
    _add_workers(two)
    l2 = which.add_parser("lemma2")
    l2.add_argument("--order", type=int, required=True)
    l2.add_argument("--max-order", type=int, default=DEFAULT_SCAN_ORDER,
                    help="raise the all-pairs guard (at most 4)")
    _add_workers(l2)
    orc = which.add_parser("oracle")
    orc.add_argument("--graphs", type=int, default=500)
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--n", type=int, default=8)
    orc.add_argument("--p", type=float, default=0.4, help="edge probability")
    _add_workers(orc)

    ft = sub.add_parser("f-table", help="tabulate f(k) with lower and upper witnesses")
    ft.add_argument("--k-max", type=int, required=True)
    ft.add_argument("--seed", type=int, default=0)
    ft.add_argument("--timing", action="store_true")

    o = sub.add_parser("oracle", help="brute-force independent path count (small graphs)")
    o.add_argument("--from", dest="u", required=True)
    o.add_argument("--to", dest="v", required=True)
    _add_input(o)
    return parser


def _read_graph(args: argparse.Namespace, stdin: TextIO) -> Graph:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = stdin.read()
    return parse_graph(text, args.input_format, collapse=args.collapse)


def _fractions(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--extra expects comma-separated numbers, got {text!r}") from None


def _workers(args: argparse.Namespace) -> int | None:
    if args.workers is not None:
        return args.workers
    env = os.environ.get(THREADS_ENV)
    return int(env) if env and env.isdigit() else None


def _report(report: Report, args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    out.write(report.to_json())
    if getattr(args, "timing", False):
        err.write(f"duration: {report.duration_s:.3f}s\n")
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def _dispatch(args: argparse.Namespace, stdin: TextIO, out: TextIO, err: TextIO) -> int:
    if args.command == "diamond":
        if args.counts_only:
            v, e, k = diamond_counts(args.order)
            out.write(_dump({"order": args.order, "vertices": v, "edges": e, "edge_disjoint_paths": k}))
            return EXIT_OK
        fmt = args.format or EDGE_LIST
        if fmt == DOT and args.order > MAX_DOT_ORDER:
            raise PreconditionError(f"DOT export is limited to order {MAX_DOT_ORDER}")
        g, _ = generate_diamond(args.order)
        out.write(serialize_graph(g, fmt))
        return EXIT_OK

    if args.command == "paths":
        g = _read_graph(args, stdin)
        if args.kind == "edge-disjoint":
            out.write(_dump(max_edge_disjoint_paths(g, args.source, args.sink).to_dict()))
        else:
            ps, cert = max_independent_paths(g, args.u, args.v)
            out.write(_dump({**ps.to_dict(), "certificate": cert.to_dict()}))
        return EXIT_OK

    if args.command == "construct":
        g = _read_graph(args, stdin)
        build = find_two_independent if args.count == "two" else find_three_independent
        out.write(_dump(build(g, args.source, args.sink).to_dict()))
        return EXIT_OK

    if args.command == "oracle":
        g = _read_graph(args, stdin)
        count = oracle_max_independent(g, args.u, args.v)
        out.write(_dump({"u": args.u, "v": args.v, "independent_paths": count}))
        return EXIT_OK

    if args.command == "f-table":
        return _report(f_table(args.k_max, seed=args.seed), args, out, err)

    workers = _workers(args)
    if args.experiment == "lemma1":
        report = verify_lemma1(args.trials, args.seed, n_min=args.n_min, n_max=args.n,
                               extra_fractions=_fractions(args.extra), k=args.k, workers=workers)
    elif args.experiment == "two-paths":
        report = verify_two_paths(args.trials, args.seed, n_max=args.n,
                                  extra_fractions=_fractions(args.extra), workers=workers)
    elif args.experiment == "lemma2":
        report = verify_lemma2(args.order, max_order=args.max_order, workers=workers)
    else:
        report = verify_oracle(args.graphs, args.seed, n_max=args.n, edge_probability=args.p,
                               workers=workers)
    return _report(report, args, out, err)


def main(
    argv: Sequence[str] | None = None,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    logging.basicConfig(level=logging.WARNING, stream=stderr, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args, stdin, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        stderr.write(f"error: parse: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (PreconditionError, GraphError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


def run_cli(argv: Sequence[str], stdin_text: str = "") -> tuple[int, str, str]:
    """Run one invocation in-process; returns (status, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old_out = sys.stdout
    sys.stdout = out  # argparse prints --help/--version straight to sys.stdout
    try:
        status = main(argv, io.StringIO(stdin_text), out, err)
    finally:
        sys.stdout = old_out
    return status, out.getvalue(), err.getvalue()


def entry() -> None:
    sys.exit(main())
