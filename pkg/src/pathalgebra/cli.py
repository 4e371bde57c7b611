"""Command-line interface: ``parse``, ``plan`` and ``run`` subcommands.

Exit codes: 1 query syntax error, 2 graph load error, 3 walk recursion diverged.
Results go to stdout; diagnostics, and ``run --explain`` plans, go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .engine import ExecutionOptions, execute, solution_space
from .errors import DivergenceError, GraphLoadError, QuerySyntaxError
from .graph import load_graph
from .optimizer import optimize
from .parser import QueryAst, parse_classic_gql, parse_query, render_query
from .paths import canonical, render_path
from .planner import plan as build_plan
from .planner import render_plan
from .solspace import render_space

EXIT_SYNTAX = 1
EXIT_GRAPH = 2
EXIT_DIVERGED = 3


def _positive(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathalgebra", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log rewrite steps")
    sub = parser.add_subparsers(dest="command", required=True)

    def query_args(p: argparse.ArgumentParser) -> None:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--query", help="query text")
        src.add_argument("--query-file", help="file holding the query text")
        p.add_argument("--classic", action="store_true", help="parse GQL selector/restrictor syntax")

    p_parse = sub.add_parser("parse", help="parse a query and print it in canonical form")
    query_args(p_parse)

    p_plan = sub.add_parser("plan", help="print the logical plan of a query")
    query_args(p_plan)
    p_plan.add_argument("--optimize", action="store_true", help="apply rewrite rules")
    p_plan.add_argument("--explain", action="store_true", help="print plans before and after rewriting")

    p_run = sub.add_parser("run", help="evaluate a query against a graph file")
    query_args(p_run)
    p_run.add_argument("--graph", required=True, help="graph file")
    p_run.add_argument("--optimize", action="store_true", help="apply rewrite rules")
    p_run.add_argument("--explain", action="store_true", help="print plans to stderr")
    p_run.add_argument("--max-depth", type=_positive, help="join iterations allowed for WALK recursion")
    p_run.add_argument("--seed", type=int, help="break projection ties randomly with this seed")
    p_run.add_argument("--limit", type=_positive, help="print at most this many paths")
    p_run.add_argument("--format", choices=("paths", "json", "table"), default="paths")
    p_run.add_argument("--show-space", action="store_true",
                       help="with --format table, print the solution space before projection")
    return parser


def _read_query(args: argparse.Namespace) -> QueryAst:
    text = args.query
    if text is None:
        with open(args.query_file, encoding="utf-8") as fh:
            text = fh.read()
    return parse_classic_gql(text) if args.classic else parse_query(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    out = sys.stdout
    try:
        ast = _read_query(args)
    except QuerySyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except OSError as exc:
        print(f"cannot read query file: {exc}", file=sys.stderr)
        return EXIT_SYNTAX

    if args.command == "parse":
        out.write(render_query(ast) + "\n")
        return 0

    logical = build_plan(ast)
    optimized = optimize(logical) if args.optimize else logical

    if args.command == "plan":
        if args.explain:
            out.write("== logical plan ==\n" + render_plan(logical))
            out.write("== optimized plan ==\n" + render_plan(optimize(logical)))
        else:
            out.write(render_plan(optimized))
        return 0

    if args.explain:
        sys.stderr.write("== logical plan ==\n" + render_plan(logical))
        sys.stderr.write("== optimized plan ==\n" + render_plan(optimize(logical)))

    try:
        graph = load_graph(args.graph)
    except GraphLoadError as exc:
        print(f"graph error: {exc}", file=sys.stderr)
        return EXIT_GRAPH

    opts = ExecutionOptions(max_depth=args.max_depth, seed=args.seed, limit=args.limit)
    try:
        if args.format == "table" and args.show_space:
            space = solution_space(optimized, graph, opts)
            out.write(render_space(space) if space is not None else "")
            return 0
        result = canonical(execute(optimized, graph, opts))
    except DivergenceError as exc:
        print(f"execution diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED

    if args.format == "json":
        json.dump([list(p.ids) for p in result], out)
        out.write("\n")
    elif args.format == "table":
        width = max([len("Path")] + [len(render_path(p)) for p in result])
        out.write(f"{'Path'.ljust(width)}  Len(p)\n")
        for p in result:
            out.write(f"{render_path(p).ljust(width)}  {p.length}\n")
    else:
        for p in result:
            out.write(render_path(p) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
