"""
Proofs of silent divergence for runs of the small-step machine.

Silent steps depend only on the configuration, so a silent run that comes
back to a configuration it already visited repeats forever. Runs whose state
keeps growing never repeat exactly; for those a loop visit that comes back
with every variable shifted by the same drift `d` is re-executed with the
state `σ + j·d` for a symbolic `j ≥ 0`. If every guard on the way has the
same truth value for all `j` and the visit ends in `σ + (j+1)·d`, the loop
repeats forever too.
"""

import logging
from dataclasses import dataclass
from typing import ClassVar, Dict, FrozenSet, List, Mapping, Optional, Tuple

from whilesem.models.syntax import (
    Assign, BinOp, Expr, If, Int, Not, Seq, Skip, State, Stmt, Var, While,
)

logger = logging.getLogger(__name__)

Configuration = Tuple[Stmt, State]


@dataclass(frozen=True)
class DivergenceEvidence:
    """
    Why a silent run never ends.

    Attributes:
        kind: 'cycle' (the last configuration repeats the first) or 'drift'
            (the last state is the first shifted by `drift`)
        configurations: The silent configurations from the first visit to the
            repeated one, both included
        drift: Per-variable shift of a drift proof, sorted by name
    """
    kind: str
    configurations: Tuple[Configuration, ...]
    drift: Tuple[Tuple[str, int], ...] = ()

    CYCLE: ClassVar[str] = "cycle"
    DRIFT: ClassVar[str] = "drift"

    @property
    def length(self) -> int:
        return len(self.configurations)

    def describe(self) -> str:
        if self.kind == self.CYCLE:
            return f"configuration cycle of {self.length - 1} silent steps"
        shift = ", ".join(f"{name}{value:+d}" for name, value in self.drift)
        return f"loop drifting by {{{shift}}} every {self.length - 1} silent steps"


# ---------------------------------------------------------------------------
# Affine re-execution
# ---------------------------------------------------------------------------

class _NotAffine(Exception):
    pass


@dataclass(frozen=True)
class Affine:
    """The integer `const + slope·j` as a function of the iteration count j."""
    const: int
    slope: int = 0

    def __add__(self, other: "Affine") -> "Affine":
        return Affine(self.const + other.const, self.slope + other.slope)

    def __sub__(self, other: "Affine") -> "Affine":
        return Affine(self.const - other.const, self.slope - other.slope)

    def __mul__(self, other: "Affine") -> "Affine":
        if self.slope and other.slope:
            raise _NotAffine("product of two drifting values")
        return Affine(self.const * other.const,
                      self.const * other.slope + self.slope * other.const)

    def sign(self) -> int:
        """Sign for every j ≥ 0; raises _NotAffine if it changes."""
        if self.slope == 0:
            return (self.const > 0) - (self.const < 0)
        if self.slope > 0 and self.const > 0:
            return 1
        if self.slope < 0 and self.const < 0:
            return -1
        raise _NotAffine("sign depends on the iteration")

    def truth(self) -> bool:
        return self.sign() != 0


_COMPARISONS = {
    "=": lambda sign: sign == 0,
    "<>": lambda sign: sign != 0,
    "<": lambda sign: sign < 0,
    "<=": lambda sign: sign <= 0,
    ">": lambda sign: sign > 0,
    ">=": lambda sign: sign >= 0,
}


def _eval_affine(expr: Expr, env: Mapping[str, Affine]) -> Affine:
    if isinstance(expr, Int):
        return Affine(expr.value)
    if isinstance(expr, Var):
        return env.get(expr.name, Affine(0))
    if isinstance(expr, Not):
        return Affine(int(not _eval_affine(expr.operand, env).truth()))

    left, right = _eval_affine(expr.left, env), _eval_affine(expr.right, env)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if expr.op == "and":
        return Affine(int(left.truth() and right.truth()))
    if expr.op == "or":
        return Affine(int(left.truth() or right.truth()))
    return Affine(int(_COMPARISONS[expr.op]((left - right).sign())))


def redex(stmt: Stmt) -> Optional[Stmt]:
    """The statement the next small step acts on; None if the statement is done."""
    if isinstance(stmt, Seq):
        first = redex(stmt.first)
        return first if first is not None else redex(stmt.second)
    if isinstance(stmt, Skip):
        return None
    return stmt


def drifts_forever(path: List[Configuration], end: State, names: FrozenSet[str]) -> bool:
    """
    Check that a silent path repeats forever with a constant drift.

    Args:
        path: Silent configurations from one loop visit up to (excluding) the
            next visit of the same statement
        end: State at the next visit
        names: Variables of the program

    Returns:
        True if the path, started from `start + j·d`, ends in
        `start + (j+1)·d` for every j ≥ 0, where d = end - start
    """
    start = path[0][1]
    drift = {name: end.lookup(name) - start.lookup(name) for name in names}
    env: Dict[str, Affine] = {name: Affine(start.lookup(name), drift[name]) for name in names}
    try:
        for stmt, _ in path:
            target = redex(stmt)
            if isinstance(target, Assign):
                env[target.var] = _eval_affine(target.expr, env)
            elif isinstance(target, (If, While)):
                _eval_affine(target.cond, env).truth()
            else:
                return False
    except _NotAffine:
        return False
    return all(env[name] == Affine(start.lookup(name) + drift[name], drift[name])
               for name in names)


# ---------------------------------------------------------------------------
# Monitoring a silent run
# ---------------------------------------------------------------------------

class SilentRunMonitor:
    """
    Records the silent configurations of one run and reports divergence
    evidence as soon as it exists.

    Configurations are compared on their statement and the values of the
    program's variables only.
    """

    def __init__(self, names: FrozenSet[str]):
        self.names = frozenset(names)
        self.trail: List[Configuration] = []
        self.seen: Dict[tuple, int] = {}
        self.last_visit: Dict[Stmt, int] = {}

    def record(self, stmt: Stmt, state: State) -> Optional[DivergenceEvidence]:
        """Record a configuration that is about to take a silent step."""
        index = len(self.trail)
        self.trail.append((stmt, state))

        fingerprint = (stmt, state.project(self.names))
        start = self.seen.get(fingerprint)
        if start is not None:
            logger.info(f"Silent cycle of {index - start} steps detected")
            return DivergenceEvidence(DivergenceEvidence.CYCLE, tuple(self.trail[start:]))
        self.seen[fingerprint] = index

        previous = self.last_visit.get(stmt)
        self.last_visit[stmt] = index
        if previous is not None and drifts_forever(self.trail[previous:index], state, self.names):
            drift = tuple((name, state.lookup(name) - self.trail[previous][1].lookup(name))
                          for name in sorted(self.names))
            logger.info(f"Silent drift of {index - previous} steps detected")
            return DivergenceEvidence(DivergenceEvidence.DRIFT, tuple(self.trail[previous:]), drift)
        return None
