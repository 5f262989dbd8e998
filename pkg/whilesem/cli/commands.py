"""
Command implementations: each takes its arguments and streams, prints its
report, and returns the process exit status.
"""

import logging
import sys
from typing import Optional, TextIO

import pandas as pd

from whilesem.cli.run_config import InputError, RunConfig, parse_init, read_integer
from whilesem.cli.transcript import Transcript, TranscriptError, drive
from whilesem.models.resumption import render
from whilesem.models.syntax import Stmt
from whilesem.models.verdict import BudgetExceeded
from whilesem.services.parser import ParseError, parse_file
from whilesem.utils.corpus import load_corpus

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_MAX_STEPS = 2
EXIT_BUDGET = 3
EXIT_BAD_INPUT = 4
EXIT_FAILS = 5
EXIT_UNKNOWN = 6


class _ProgramError(Exception):
    pass


def _load(path: str, stderr: TextIO) -> Stmt:
    try:
        return parse_file(path)
    except ParseError as e:
        logger.error(f"Parse error in {path}: {e}")
        print(f"{path}:{e.line}:{e.column}: {e.message}", file=stderr)
    except OSError as e:
        logger.error(f"Cannot read {path}: {e}")
        print(f"{path}: {e.strerror}", file=stderr)
    raise _ProgramError(path)


def _streams(stdout: Optional[TextIO], stderr: Optional[TextIO]):
    return stdout or sys.stdout, stderr or sys.stderr


def _budget_message(error: BudgetExceeded) -> str:
    return f"{type(error).__name__}: {error}"


def cmd_run(path: str, run_config: RunConfig, stdin: Optional[TextIO] = None,
            stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None,
            transcript_path: Optional[str] = None) -> int:
    """
    Run a program interactively.

    Inputs are read one integer per line from `stdin`; outputs are written
    one per line to `stdout`, followed by `ret {…}` on termination or `•` on a
    detected silent divergence.

    Returns:
        0 on termination or black hole, 1 on a parse error, 2 when
        max-steps is reached, 3 when the semantics runs out of budget,
        4 on malformed or missing input
    """
    stdin = stdin or sys.stdin
    stdout, stderr = _streams(stdout, stderr)
    try:
        program = _load(path, stderr)
    except _ProgramError:
        return EXIT_PARSE_ERROR

    logger.info(f"Running {path} under the {run_config.semantics} semantics")
    resumption = run_config.service().evaluate(program, run_config.init, run_config.semantics)

    def write_output(value: int):
        print(value, file=stdout)
        stdout.flush()

    status = EXIT_OK
    try:
        transcript = drive(resumption, lambda: read_integer(stdin.readline()),
                           write_output, run_config.max_steps)
    except InputError as e:
        logger.error(f"Bad input: {e}")
        print(f"input error: {e}", file=stderr)
        return EXIT_BAD_INPUT
    except BudgetExceeded as e:
        logger.info(f"Budget exhausted: {e}")
        print(_budget_message(e), file=stderr)
        return EXIT_BUDGET

    if transcript.timed_out:
        print(f"stopped after {run_config.max_steps} steps", file=stderr)
        status = EXIT_MAX_STEPS
    else:
        print(transcript.ending, file=stdout)

    if transcript_path:
        transcript.semantics = run_config.semantics
        transcript.init = ",".join(f"{k}={v}" for k, v in run_config.init.items())
        transcript.max_steps = run_config.max_steps
        with open(transcript_path, "w", encoding="utf-8") as f:
            f.write(transcript.format())
    return status


def cmd_trace(path: str, run_config: RunConfig, depth: int,
              stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Print the bounded prefix of a program's resumption in trace syntax."""
    stdout, stderr = _streams(stdout, stderr)
    try:
        program = _load(path, stderr)
    except _ProgramError:
        return EXIT_PARSE_ERROR

    resumption = run_config.service().evaluate(program, run_config.init, run_config.semantics)
    try:
        text = render(resumption, depth, run_config.inputs)
    except BudgetExceeded as e:
        print(_budget_message(e), file=stderr)
        return EXIT_BUDGET
    print(text, file=stdout)
    return EXIT_OK


def cmd_bisim(path_a: str, path_b: str, run_config: RunConfig, relation: str = "weak",
              stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Check two programs against a relation, both run from the initial state.

    Returns:
        0 for Holds, 5 for Fails, 6 for Unknown, 1 on a parse error
    """
    stdout, stderr = _streams(stdout, stderr)
    try:
        left, right = _load(path_a, stderr), _load(path_b, stderr)
    except _ProgramError:
        return EXIT_PARSE_ERROR

    logger.info(f"Checking {path_a} against {path_b} ({relation})")
    verdict = run_config.service().check(relation, left, right, run_config.init)
    print(verdict.render(), file=stdout)
    if verdict.holds:
        return EXIT_OK
    return EXIT_FAILS if verdict.fails else EXIT_UNKNOWN


def cmd_compare(path: str, run_config: RunConfig, trace_depth: int = 6,
                stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Cross-check a program under all four semantics and print the results.

    Prints the verdict table followed by a bounded prefix of the program's
    behaviour under each semantics. Verdicts do not affect the exit status.
    """
    stdout, stderr = _streams(stdout, stderr)
    try:
        program = _load(path, stderr)
    except _ProgramError:
        return EXIT_PARSE_ERROR

    service = run_config.service()
    checks = pd.DataFrame(service.compare(program, run_config.init))
    traces = pd.DataFrame(service.traces(program, run_config.init, trace_depth))
    print(checks.to_string(index=False), file=stdout)
    print(file=stdout)
    print(traces.to_string(index=False), file=stdout)
    return EXIT_OK


def replay_transcript(program: Stmt, expected: Transcript, run_config: RunConfig) -> Transcript:
    """
    Re-run a program feeding it the inputs of a transcript.

    The semantics, initial state and step bound come from the transcript
    header where it has them.

    Raises:
        InputError: If the program asks for more inputs than recorded
        BudgetExceeded: As for an interactive run
    """
    settings = {"semantics": expected.semantics, "init": parse_init(expected.init)}
    if expected.max_steps is not None:
        settings["max_steps"] = expected.max_steps
    config = RunConfig(fuel=run_config.fuel, depth=run_config.depth, inputs=run_config.inputs,
                       breadth=run_config.breadth, **settings)
    pending = iter(expected.inputs)

    def read_input() -> int:
        try:
            return next(pending)
        except StopIteration:
            raise InputError("transcript has no more inputs") from None

    resumption = config.service().evaluate(program, config.init, config.semantics)
    return drive(resumption, read_input, lambda value: None, config.max_steps)


def cmd_corpus(directory: Optional[str], run_config: RunConfig,
               stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Replay every corpus program that has a transcript sidecar.

    Returns:
        0 if every transcript is reproduced, 5 otherwise
    """
    stdout, stderr = _streams(stdout, stderr)
    try:
        entries = load_corpus(directory)
    except FileNotFoundError as e:
        print(str(e), file=stderr)
        return EXIT_PARSE_ERROR

    failures = 0
    for entry in entries:
        if not entry.has_transcript:
            continue
        try:
            expected = Transcript.load(entry.transcript_path)
            actual = replay_transcript(entry.program(), expected, run_config)
        except (TranscriptError, ParseError, InputError, BudgetExceeded, ValueError) as e:
            logger.warning(f"{entry.name}: {e}")
            print(f"FAIL {entry.name}: {e}", file=stdout)
            failures += 1
            continue
        if actual.same_run(expected):
            print(f"PASS {entry.name}", file=stdout)
        else:
            failures += 1
            print(f"FAIL {entry.name}: expected {expected.events} ! {expected.ending}, "
                  f"got {actual.events} ! {actual.ending}", file=stdout)
    return EXIT_OK if failures == 0 else EXIT_FAILS
