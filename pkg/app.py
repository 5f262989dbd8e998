"""
Main entry point for the whilesem workbench.

    python app.py run prog.whl --semantics small --init x=3
    python app.py trace prog.whl --depth 8
    python app.py bisim a.whl b.whl --relation weak
    python app.py compare prog.whl
    python app.py corpus
"""

import argparse
import logging
import sys
from typing import List, Optional

from whilesem import config
from whilesem.cli.commands import (EXIT_BAD_INPUT, cmd_bisim, cmd_compare, cmd_corpus, cmd_run,
                                   cmd_trace)
from whilesem.cli.run_config import RunConfig
from whilesem.services.semantics_service import SemanticsService

logger = logging.getLogger(__name__)


def _add_budget_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--semantics", choices=SemanticsService.SEMANTICS,
                        help="Semantics to evaluate under (default: big)")
    parser.add_argument("--init", help="Initial state, e.g. x=3,y=4")
    parser.add_argument("--fuel", type=int, help="Delays stripped per convergence search")
    parser.add_argument("--inputs", help="Input sample used by checks and traces, e.g. -2,-1,0,1,2")
    parser.add_argument("--breadth", type=int, help="Node budget per check")
    parser.add_argument("--max-steps", dest="max_steps", type=int,
                        help="Heads observed by an interactive run before it stops")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whilesem",
        description="Run, trace and compare While programs with interactive I/O")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run a program interactively")
    run.add_argument("program")
    run.add_argument("--transcript", help="Write the run to this sidecar file")
    _add_budget_flags(run)

    trace = commands.add_parser("trace", help="Print a bounded prefix of a program's behaviour")
    trace.add_argument("program")
    trace.add_argument("--depth", type=int, default=10, help="Layers to print (default: 10)")
    _add_budget_flags(trace)

    bisim = commands.add_parser("bisim", help="Check two programs against a relation")
    bisim.add_argument("left")
    bisim.add_argument("right")
    bisim.add_argument("--relation", choices=SemanticsService.RELATIONS, default="weak")
    bisim.add_argument("--depth", type=int, help="Layers explored by the check")
    _add_budget_flags(bisim)

    compare = commands.add_parser("compare", help="Cross-check the four semantics of a program")
    compare.add_argument("program")
    compare.add_argument("--depth", type=int, help="Layers explored by the checks")
    compare.add_argument("--trace-depth", dest="trace_depth", type=int, default=6)
    _add_budget_flags(compare)

    corpus = commands.add_parser("corpus", help="Replay the transcripts of the program corpus")
    corpus.add_argument("directory", nargs="?", help=f"Corpus directory (default: {config.CORPUS_DIR})")
    _add_budget_flags(corpus)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level="INFO" if args.verbose else config.LOG_LEVEL, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")

    # trace --depth is the rendering depth, not the check depth
    depth = args.depth if args.command == "trace" else None
    if depth is not None:
        args.depth = None
    try:
        run_config = RunConfig.from_args(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if args.command == "run":
        return cmd_run(args.program, run_config, transcript_path=args.transcript)
    if args.command == "trace":
        return cmd_trace(args.program, run_config, depth)
    if args.command == "bisim":
        return cmd_bisim(args.left, args.right, run_config, args.relation)
    if args.command == "compare":
        return cmd_compare(args.program, run_config, args.trace_depth)
    return cmd_corpus(args.directory, run_config)


if __name__ == "__main__":
    raise SystemExit(main())
