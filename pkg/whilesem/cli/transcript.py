"""
Interaction transcripts and the loop that drives a resumption interactively.

Sidecar format, one item per line:

    # semantics: big
    # init: x=0,i=0
    # max-steps: 200
    < 5
    > 5
    ! ret {x=0}

`< n` is an input, `> n` an output, and the single `!` line ends the run
with `ret {…}`, `•` or `timeout`.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, ClassVar, List, Optional, Tuple

from whilesem.models.resumption import BlackHole, Delay, In, Out, Resumption, Ret

logger = logging.getLogger(__name__)


class TranscriptError(ValueError):
    """Exception raised for malformed transcript files."""


@dataclass
class Transcript:
    """
    One interactive run.

    Attributes:
        events: ('<', n) for every input and ('>', n) for every output, in order
        ending: 'ret {…}', '•' or 'timeout'; None while the run is unfinished
        semantics: Semantics the run uses
        init: Initial bindings as written on the command line
        max_steps: Step bound of the run, if any
    """
    events: List[Tuple[str, int]] = field(default_factory=list)
    ending: Optional[str] = None
    semantics: str = "big"
    init: str = ""
    max_steps: Optional[int] = None

    INPUT: ClassVar[str] = "<"
    OUTPUT: ClassVar[str] = ">"
    TIMEOUT: ClassVar[str] = "timeout"
    BLACK_HOLE: ClassVar[str] = "•"

    @property
    def inputs(self) -> List[int]:
        return [value for kind, value in self.events if kind == self.INPUT]

    @property
    def outputs(self) -> List[int]:
        return [value for kind, value in self.events if kind == self.OUTPUT]

    @property
    def timed_out(self) -> bool:
        return self.ending == self.TIMEOUT

    def same_run(self, other: "Transcript") -> bool:
        """True iff both transcripts record the same events and ending."""
        return self.events == other.events and self.ending == other.ending

    def format(self) -> str:
        lines = [f"# semantics: {self.semantics}"]
        if self.init:
            lines.append(f"# init: {self.init}")
        if self.max_steps is not None:
            lines.append(f"# max-steps: {self.max_steps}")
        lines.extend(f"{kind} {value}" for kind, value in self.events)
        if self.ending is not None:
            lines.append(f"! {self.ending}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Transcript":
        """
        Parse a sidecar file.

        Raises:
            TranscriptError: On an unknown line, a non-integer value, or a
                missing or repeated `!` line
        """
        transcript = cls()
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if transcript.ending is not None:
                raise TranscriptError(f"line {number}: content after the final '!' line")
            if line.startswith("#"):
                transcript._read_header(line[1:], number)
            elif line[0] in (cls.INPUT, cls.OUTPUT):
                try:
                    transcript.events.append((line[0], int(line[1:].strip())))
                except ValueError:
                    raise TranscriptError(f"line {number}: not an integer: {line!r}") from None
            elif line.startswith("!"):
                transcript.ending = line[1:].strip()
            else:
                raise TranscriptError(f"line {number}: unexpected {line!r}")
        if transcript.ending is None:
            raise TranscriptError("missing final '!' line")
        return transcript

    def _read_header(self, text: str, number: int):
        name, _, value = text.partition(":")
        name, value = name.strip(), value.strip()
        if name == "semantics":
            self.semantics = value
        elif name == "init":
            self.init = value
        elif name == "max-steps":
            try:
                self.max_steps = int(value)
            except ValueError:
                raise TranscriptError(f"line {number}: bad max-steps {value!r}") from None
        elif name:
            logger.debug(f"Ignoring transcript comment on line {number}")

    @classmethod
    def load(cls, path: str) -> "Transcript":
        with open(path, encoding="utf-8") as f:
            return cls.parse(f.read())


def drive(r: Resumption, read_input: Callable[[], int], write_output: Callable[[int], None],
          max_steps: int) -> Transcript:
    """
    Observe a resumption interactively.

    Every observed head counts as one step; delays are taken silently.

    Args:
        r: Resumption to run
        read_input: Called on every input request
        write_output: Called with every output value
        max_steps: Heads observed before the run stops with a timeout

    Returns:
        The transcript of the run (without header fields)

    Raises:
        InputError: From `read_input`
        BudgetExceeded: From observing a delay-free or classical-style
            resumption whose silent run is out of fuel
    """
    transcript = Transcript()
    node = r
    for _ in range(max_steps):
        head = node.observe()
        if isinstance(head, Delay):
            node = head.tail
        elif isinstance(head, Out):
            transcript.events.append((Transcript.OUTPUT, head.value))
            write_output(head.value)
            node = head.tail
        elif isinstance(head, In):
            value = read_input()
            transcript.events.append((Transcript.INPUT, value))
            node = head.resume(value)
        elif isinstance(head, Ret):
            transcript.ending = f"ret {head.state.render()}"
            return transcript
        elif isinstance(head, BlackHole):
            transcript.ending = Transcript.BLACK_HOLE
            return transcript
    logger.info(f"Run stopped after {max_steps} steps")
    transcript.ending = Transcript.TIMEOUT
    return transcript
