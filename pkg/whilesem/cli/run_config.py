"""
Per-invocation settings for the command-line front end.
"""

from dataclasses import dataclass, field
from typing import Any, Tuple

from whilesem import config
from whilesem.models.syntax import State
from whilesem.models.verdict import CheckBudget
from whilesem.services.semantics_service import SemanticsService


class InputError(Exception):
    """Exception raised for malformed or missing interactive input."""


def parse_init(text: str) -> State:
    """
    Parse initial bindings written as `x=3,y=4`.

    Raises:
        ValueError: If a binding is not `name=integer`
    """
    bindings = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier():
            raise ValueError(f"Malformed binding: {item!r}")
        try:
            bindings[name] = int(value)
        except ValueError:
            raise ValueError(f"Malformed value in binding: {item!r}") from None
    return State(bindings)


def parse_inputs(text: str) -> Tuple[int, ...]:
    """Parse an input sample written as `-2,-1,0,1,2`."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"Malformed input sample: {text!r}") from None


def read_integer(line: str) -> int:
    """
    Parse one line of interactive input.

    Raises:
        InputError: At end of input or on anything but a decimal integer
    """
    if not line:
        raise InputError("end of input while waiting for an integer")
    try:
        return int(line.strip())
    except ValueError:
        raise InputError(f"not an integer: {line.strip()!r}") from None


@dataclass
class RunConfig:
    """
    Settings for one command.

    Attributes:
        semantics: One of SemanticsService.SEMANTICS
        init: Initial state
        fuel: Delays stripped per convergence search
        depth: Layers explored by checks
        inputs: Sample fed to input branches by checks and traces
        breadth: Node budget per check
        max_steps: Heads observed by an interactive run before it stops
    """
    semantics: str = "big"
    init: State = field(default_factory=State)
    fuel: int = field(default_factory=lambda: config.DEFAULT_FUEL)
    depth: int = field(default_factory=lambda: config.DEFAULT_DEPTH)
    inputs: Tuple[int, ...] = field(default_factory=lambda: config.DEFAULT_INPUTS)
    breadth: int = field(default_factory=lambda: config.DEFAULT_BREADTH)
    max_steps: int = field(default_factory=lambda: config.MAX_STEPS)

    def __post_init__(self):
        if self.semantics not in SemanticsService.SEMANTICS:
            raise ValueError(f"Unknown semantics: {self.semantics}")
        if self.max_steps < 1:
            raise ValueError(f"max-steps must be at least 1, got {self.max_steps}")
        self.budget  # validates the budget fields

    @property
    def budget(self) -> CheckBudget:
        return CheckBudget(fuel=self.fuel, depth=self.depth, inputs=self.inputs,
                           breadth=self.breadth)

    def service(self) -> SemanticsService:
        return SemanticsService(self.budget)

    @classmethod
    def from_args(cls, args: Any) -> "RunConfig":
        """
        Build a configuration from parsed command-line arguments.

        Flags that were not given keep their configured defaults.
        """
        values = {}
        if getattr(args, "semantics", None):
            values["semantics"] = args.semantics
        if getattr(args, "init", None):
            values["init"] = parse_init(args.init)
        if getattr(args, "inputs", None):
            values["inputs"] = parse_inputs(args.inputs)
        for name in ("fuel", "depth", "breadth", "max_steps"):
            if getattr(args, name, None) is not None:
                values[name] = getattr(args, name)
        return cls(**values)
