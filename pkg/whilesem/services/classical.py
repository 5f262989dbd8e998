"""
Classical-style resumptions: silent divergence becomes a black hole.

The classical-style semantics decides, for every silent run, whether it ends
in an action or diverges. It cannot decide this in general. It answers when
the small-step machine either reaches an action within the fuel or shows
divergence evidence (a repeated configuration, or a loop with constant
drift), and otherwise raises UndecidedWithinBudget where the run is observed.
"""

import logging
from typing import Callable, Optional, Union

from whilesem.models.configuration import LConf
from whilesem.models.resumption import (
    BlackHole, In, Out, Res, ResC, Resumption, Ret, bot, converges,
)
from whilesem.models.syntax import State, Stmt, variables
from whilesem.models.verdict import BudgetExceeded, CheckBudget, Path, Step, Verdict
from whilesem.services.bisimulation import strong_bisim
from whilesem.services.divergence import DivergenceEvidence, SilentRunMonitor
from whilesem.services.smallstep import step

logger = logging.getLogger(__name__)


class UndecidedWithinBudget(BudgetExceeded):
    """Exception raised when a silent run neither ends nor shows divergence evidence."""

    def __init__(self, path: Path, fuel: int):
        super().__init__("neither an action nor divergence evidence", path, fuel)


def emb_c(rc: Resumption) -> Res:
    """Read a classical-style resumption as a delayful one; • becomes ⊥."""
    def head():
        found = rc.observe()
        if isinstance(found, BlackHole):
            return bot().observe()
        if isinstance(found, Out):
            return Out(found.value, emb_c(found.tail))
        if isinstance(found, In):
            return In(lambda v: emb_c(found.resume(v)))
        return found

    key = ("emb_c", rc.key) if rc.key is not None else None
    return Res(head, key=key)


def norm_c(r: Res, budget: Optional[CheckBudget] = None,
           divergence: Optional[Callable[[Res], bool]] = None, path: Path = ()) -> ResC:
    """
    Collapse finite delay runs, sending proven silent divergence to •.

    Args:
        r: Delayful resumption
        budget: Its fuel bounds every run of delays
        divergence: Consulted on the remaining resumption when the fuel runs
            out; a black hole is produced only when it returns True
        path: Observation path leading to `r`, reported in errors

    Returns:
        A classical-style resumption. Observing a point where the fuel runs
        out without divergence evidence raises UndecidedWithinBudget.
    """
    budget = budget or CheckBudget.from_config()

    def head():
        result = converges(r, budget.fuel)
        if not result.converged:
            if divergence is not None and divergence(result.rest):
                return BlackHole()
            raise UndecidedWithinBudget(path, budget.fuel)
        found = result.head
        if isinstance(found, Ret):
            return found
        if isinstance(found, Out):
            tail_path = path + (Step.out(found.value),)
            return Out(found.value, norm_c(found.tail, budget, divergence, tail_path))
        return In(lambda v: norm_c(found.resume(v), budget, divergence, path + (Step.inp(v),)))

    key = None
    if r.key is not None and divergence is None:
        key = ("norm_c", r.key, budget.fuel)
    return ResC(head, key=key)


def strong_bisim_c(rc: ResC, rc_star: ResC, budget: Optional[CheckBudget] = None) -> Verdict:
    """Strong bisimilarity of classical-style resumptions; • only matches •."""
    return strong_bisim(rc, rc_star, budget)


def eval_classical(stmt: Stmt, state: State, budget: Optional[CheckBudget] = None) -> ResC:
    """
    Classical-style big-step semantics.

    Between two actions the small-step machine runs silently while a monitor
    watches the visited configurations. The head is the action reached, or •
    once the monitor has divergence evidence.

    Args:
        stmt: Statement to evaluate
        state: Initial state
        budget: Fuel per silent run

    Returns:
        The classical-style resumption. Observing a silent run that takes
        more than `budget.fuel` steps without evidence raises
        UndecidedWithinBudget.
    """
    budget = budget or CheckBudget.from_config()
    return _resume(stmt, state, budget.fuel, variables(stmt), ())


def _resume(stmt: Stmt, state: State, fuel: int, names, path: Path) -> ResC:
    return ResC(lambda: _next_action(stmt, state, fuel, names, path),
                key=("classical", stmt, state, fuel))


def _next_action(stmt: Stmt, state: State, fuel: int, names, path: Path):
    found = silent_run(stmt, state, fuel, names, path)
    if isinstance(found, DivergenceEvidence):
        return BlackHole(found)
    if found.kind == LConf.RET:
        return Ret(found.state)
    if found.kind == LConf.OUT:
        return Out(found.value, _resume(found.stmt, found.state, fuel, names,
                                        path + (Step.out(found.value),)))
    return In(lambda v: _resume(found.stmt, found.resume(v), fuel, names, path + (Step.inp(v),)))


def silent_run(stmt: Stmt, state: State, fuel: int, names,
               path: Path = ()) -> Union[LConf, DivergenceEvidence]:
    """
    Run silent steps until an action, or until divergence is proven.

    Args:
        stmt: Statement of the configuration
        state: State of the configuration
        fuel: Maximum number of silent steps
        names: Variables compared when looking for repetition
        path: Observation path, reported in errors

    Returns:
        The first non-silent labelled configuration, or divergence evidence

    Raises:
        UndecidedWithinBudget: If the fuel runs out first
    """
    monitor = SilentRunMonitor(names)
    steps = 0
    while True:
        conf = step(stmt, state)
        if not conf.is_silent:
            return conf
        evidence = monitor.record(stmt, state)
        if evidence is not None:
            return evidence
        if steps == fuel:
            raise UndecidedWithinBudget(path, fuel)
        stmt, state = conf.stmt, conf.state
        steps += 1


def mult_c() -> ResC:
    """Multiplier reading two integers, black hole on a negative first operand."""
    def first(m: int) -> ResC:
        def second(n: int) -> ResC:
            if m >= 0:
                return ResC.out(m * n, ResC.later(mult_c, key=("mult_c",)))
            return ResC.black_hole()
        return ResC.inp(second)
    return ResC.inp(first, key=("mult_c",))
