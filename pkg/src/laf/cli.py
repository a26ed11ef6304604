"""Command-line driver: ``laf eval``, ``laf graph`` and ``laf trace``.

Exit codes: 0 ok, 1 usage, 2 parse or validation error, 3 solver error.
Nothing is written to standard output unless the whole command succeeds.
"""
from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from laf.engine import evaluate
from laf.errors import (
    ConfigurationError,
    CycleViolation,
    KBSyntaxError,
    SolverError,
    ValidationError,
)
from laf.export import export_dot, graph_to_json, report_json, report_text
from laf.graph import build_graph
from laf.kb import ground
from laf.parser import load_kb, parse_literal
from laf.propagation import build_equations, solve, trace

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    path: str
    input_format: str = "dsl"
    rules_as_premises: bool = True
    start: str = "bottom"
    tolerance: float = 1e-9
    max_iterations: int = 10_000
    output: str = "text"

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ConfigurationError("--tolerance must be positive")
        if self.max_iterations < 1:
            raise ConfigurationError("--max-iterations must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="knowledge base (.laf or .json)")
    common.add_argument("--format", choices=("dsl", "json"), default=None, dest="input_format",
                        help="input format (default: from the file extension)")
    group = common.add_mutually_exclusive_group()
    group.add_argument("--rules-as-premises", dest="rules_as_premises", action="store_true", default=True,
                       help="rule labels take part in support (default)")
    group.add_argument("--no-rules-as-premises", dest="rules_as_premises", action="store_false")
    common.add_argument("--start", choices=("bottom", "top"), default="bottom",
                        help="start value for iterated components")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--max-iterations", type=int, default=10_000)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--dot", dest="output", action="store_const", const="dot")
    out.add_argument("--json", dest="output", action="store_const", const="json")

    parser = _Parser(prog="laf", description="Evaluate labeled argumentation frameworks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("eval", parents=[common], help="labels and acceptability of every claim")
    sub.add_parser("graph", parents=[common], help="argumentation graph as DOT or JSON")
    p = sub.add_parser("trace", parents=[common], help="explain how a claim got its labels")
    p.add_argument("claim", help='ground literal, e.g. "sol_rep_prob(cp)"')
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        path=args.path,
        input_format=args.input_format or ("json" if args.path.endswith(".json") else "dsl"),
        rules_as_premises=args.rules_as_premises,
        start=args.start,
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
        output=args.output or "text",
    )


def cmd_eval(config: RunConfig) -> str:
    kb = load_kb(config.path, config.input_format)
    ev = evaluate(kb, config.rules_as_premises, config.start, config.tolerance, config.max_iterations)
    if config.output == "json":
        return json.dumps(report_json(ev.labeling, ev.statuses), indent=2, ensure_ascii=False) + "\n"
    if config.output == "dot":
        return export_dot(ev.graph, ev.labeling)
    return report_text(ev.labeling, ev.statuses, color=os.environ.get("LAF_COLOR") == "1")


def cmd_graph(config: RunConfig) -> str:
    kb = load_kb(config.path, config.input_format)
    graph = build_graph(ground(kb), rules_as_premises=config.rules_as_premises)
    if config.output == "json":
        return json.dumps(graph_to_json(graph), indent=2, ensure_ascii=False) + "\n"
    try:
        labeling, _ = solve(build_equations(graph), config.start, config.tolerance, config.max_iterations)
    except SolverError:
        labeling = None
    return export_dot(graph, labeling)


class _UnknownClaim(Exception):
    pass


def cmd_trace(config: RunConfig, claim: str) -> str:
    kb = load_kb(config.path, config.input_format)
    ev = evaluate(kb, config.rules_as_premises, config.start, config.tolerance, config.max_iterations)
    known = sorted(ev.graph.inodes)
    try:
        key = str(parse_literal(claim))
    except KBSyntaxError:
        key = claim.strip()
    if key not in ev.graph.inodes:
        close = difflib.get_close_matches(key, known, n=5, cutoff=0.4)
        raise _UnknownClaim(
            f"unknown claim {claim!r}; known claims: {', '.join(close or known)}"
        )
    return trace(ev.labeling, key).render() + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        if args.command == "eval":
            out = cmd_eval(config)
        elif args.command == "graph":
            config = RunConfig(**{**config.__dict__, "output": args.output or "dot"})
            out = cmd_graph(config)
        else:
            out = cmd_trace(config, args.claim)
    except (ConfigurationError, _UnknownClaim) as exc:
        print(f"laf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"laf: cannot read {args.path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    except KBSyntaxError as exc:
        for err in exc.errors:
            print(err, file=sys.stderr)
        return EXIT_INPUT
    except (CycleViolation, ValidationError) as exc:
        print(f"laf: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as exc:
        print(f"laf: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
