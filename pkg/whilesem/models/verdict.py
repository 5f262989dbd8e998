"""
Verdicts, witnesses and budgets shared by every bounded coinductive check.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import ClassVar, Iterable, Optional, Tuple

from whilesem import config


class Outcome(Enum):
    """Three-valued outcome of a bounded check."""
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    """
    One step of an observation path.

    Attributes:
        kind: 'delay' (one δ), 'skip' (a run of `value` matched delays on both
            sides), 'in' (input `value` fed), or 'out' (output `value` emitted)
        value: Input/output value or run length; None for a single delay
    """
    kind: str
    value: Optional[int] = None

    DELAY: ClassVar[str] = "delay"
    SKIP: ClassVar[str] = "skip"
    IN: ClassVar[str] = "in"
    OUT: ClassVar[str] = "out"

    @classmethod
    def delay(cls) -> "Step":
        return cls(cls.DELAY)

    @classmethod
    def skip(cls, count: int) -> "Step":
        return cls(cls.SKIP, count)

    @classmethod
    def inp(cls, value: int) -> "Step":
        return cls(cls.IN, value)

    @classmethod
    def out(cls, value: int) -> "Step":
        return cls(cls.OUT, value)

    def __str__(self) -> str:
        if self.kind == self.DELAY:
            return "δ"
        if self.kind == self.SKIP:
            return f"δ×{self.value}"
        return f"{self.kind} {self.value}"


Path = Tuple[Step, ...]


def render_path(path: Iterable[Step]) -> str:
    """Render a path in trace syntax, `ε` for the empty path."""
    text = ".".join(str(step) for step in path)
    return text or "ε"


@dataclass(frozen=True)
class Witness:
    """
    A finite, replayable counterexample.

    Attributes:
        steps: Observation path from both roots to the mismatch
        left: Description of the left subject's head at the end of the path
        right: Description of the right subject's head at the end of the path
        weak: True when every action step is reached by converging first
            (with `fuel`), False when the path lists every head exactly
        fuel: Fuel used to converge before each action of a weak path
    """
    steps: Path
    left: str
    right: str
    weak: bool = False
    fuel: int = 0

    def prefixed(self, step: Step) -> "Witness":
        return replace(self, steps=(step,) + self.steps)

    def render(self) -> str:
        return f"{render_path(self.steps)}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a bounded check.

    Fails always carries a witness; Unknown carries the budget dimension that
    ran out (or the budget error met while observing) and where.
    """
    outcome: Outcome
    witness: Optional[Witness] = None
    reason: Optional[str] = None
    path: Path = ()

    @classmethod
    def holding(cls) -> "Verdict":
        return cls(Outcome.HOLDS)

    @classmethod
    def failing(cls, witness: Witness) -> "Verdict":
        return cls(Outcome.FAILS, witness=witness, path=witness.steps)

    @classmethod
    def undecided(cls, reason: str, path: Path = ()) -> "Verdict":
        return cls(Outcome.UNKNOWN, reason=reason, path=path)

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome is Outcome.FAILS

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def prefixed(self, step: Step) -> "Verdict":
        """The same verdict seen from one step further up the tree."""
        if self.fails:
            return Verdict.failing(self.witness.prefixed(step))
        if self.unknown:
            return Verdict.undecided(self.reason, (step,) + self.path)
        return self

    @staticmethod
    def conjunction(verdicts: Iterable["Verdict"]) -> "Verdict":
        """First Fails wins; otherwise first Unknown; otherwise Holds."""
        undecided = None
        for verdict in verdicts:
            if verdict.fails:
                return verdict
            if verdict.unknown and undecided is None:
                undecided = verdict
        return undecided or Verdict.holding()

    def render(self) -> str:
        if self.holds:
            return "Holds"
        if self.fails:
            return f"Fails({self.witness.render()})"
        return f"Unknown({self.reason} at {render_path(self.path)})"


@dataclass(frozen=True)
class CheckBudget:
    """
    Resource bounds for every coinductive check.

    Attributes:
        fuel: Maximum delays stripped per convergence search
        depth: Maximum layers (actions or matched delay runs) explored
        inputs: Sample of integers fed to input branches
        breadth: Maximum number of node pairs observed in one check
    """
    fuel: int = field(default_factory=lambda: config.DEFAULT_FUEL)
    depth: int = field(default_factory=lambda: config.DEFAULT_DEPTH)
    inputs: Tuple[int, ...] = field(default_factory=lambda: config.DEFAULT_INPUTS)
    breadth: int = field(default_factory=lambda: config.DEFAULT_BREADTH)

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if self.fuel < 1:
            raise ValueError(f"fuel must be at least 1, got {self.fuel}")
        if self.depth < 0:
            raise ValueError(f"depth must be non-negative, got {self.depth}")
        if not self.inputs:
            raise ValueError("input sample must be nonempty")
        if self.breadth < 1:
            raise ValueError(f"breadth must be at least 1, got {self.breadth}")

    @classmethod
    def from_config(cls) -> "CheckBudget":
        return cls()

    def with_depth(self, depth: int) -> "CheckBudget":
        return replace(self, depth=depth)

    def with_fuel(self, fuel: int) -> "CheckBudget":
        return replace(self, fuel=fuel)

    @property
    def horizon(self) -> int:
        """Number of exact layers a weak check at this budget can reach."""
        return self.depth * (self.fuel + 1)


class BudgetExceeded(Exception):
    """Exception raised when a lazily built tree needs more fuel than granted."""

    def __init__(self, message: str, path: Path = (), fuel: int = 0):
        super().__init__(f"{message} after {render_path(path)} (fuel {fuel})")
        self.path = path
        self.fuel = fuel


class Counter:
    """Node budget shared by all layers of one check."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        """Consume one node; False once the budget is gone."""
        self.used += 1
        return self.used <= self.limit
