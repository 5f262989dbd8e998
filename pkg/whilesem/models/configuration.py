"""
Labelled configurations: the one-step outcome of a statement in a state.
"""

from dataclasses import dataclass, field
from typing import Callable, ClassVar, Optional

from whilesem.models.syntax import State, Stmt


@dataclass(frozen=True)
class LConf:
    """
    Outcome of one small step, tagged with what the step shows.

    Attributes:
        kind: 'ret' (terminal), 'in' (waiting for input), 'out' (emitting
            `value`), or 'delay' (a silent step)
        stmt: Statement left to run; None for 'ret'
        state: State reached; None for 'in'
        value: Output value for 'out'
        resume: For 'in', maps the input to the state to continue in
    """
    kind: str
    stmt: Optional[Stmt] = None
    state: Optional[State] = None
    value: Optional[int] = None
    resume: Optional[Callable[[int], State]] = field(default=None, compare=False)

    RET: ClassVar[str] = "ret"
    IN: ClassVar[str] = "in"
    OUT: ClassVar[str] = "out"
    DELAY: ClassVar[str] = "delay"

    @classmethod
    def ret(cls, state: State) -> "LConf":
        return cls(cls.RET, state=state)

    @classmethod
    def inp(cls, stmt: Stmt, resume: Callable[[int], State]) -> "LConf":
        return cls(cls.IN, stmt=stmt, resume=resume)

    @classmethod
    def out(cls, value: int, stmt: Stmt, state: State) -> "LConf":
        return cls(cls.OUT, stmt=stmt, state=state, value=value)

    @classmethod
    def delay(cls, stmt: Stmt, state: State) -> "LConf":
        return cls(cls.DELAY, stmt=stmt, state=state)

    @property
    def is_silent(self) -> bool:
        return self.kind == self.DELAY

    def with_stmt(self, stmt: Stmt) -> "LConf":
        """The same outcome with a different statement left to run."""
        return LConf(self.kind, stmt, self.state, self.value, self.resume)

    def describe(self) -> str:
        if self.kind == self.RET:
            return f"ret {self.state.render()}"
        if self.kind == self.OUT:
            return f"out {self.value}"
        if self.kind == self.IN:
            return "in"
        return "δ"
