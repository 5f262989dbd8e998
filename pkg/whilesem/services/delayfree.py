"""
Delay-free resumptions: normalization, embedding, and the delay-free
big-step semantics.

Silent computation is collapsed on the fly. Every collapse is bounded by the
budget fuel, so a run that stays silent for too long raises
NotResponsiveWithinBudget at the point where it is observed, rather than
being collapsed into something arbitrary.
"""

import logging
from typing import Optional, Tuple

from whilesem.models.resumption import In, Out, Res, ResR, Resumption, Ret, converges
from whilesem.models.syntax import (
    Assign, If, Input, Output, Seq, Skip, State, Stmt, While, eval_expr, is_true,
)
from whilesem.models.verdict import BudgetExceeded, CheckBudget, Path, Step, Verdict
from whilesem.services.bisimulation import strong_bisim

logger = logging.getLogger(__name__)


class NotResponsiveWithinBudget(BudgetExceeded):
    """Exception raised when no observable action appears within the fuel."""

    def __init__(self, path: Path, fuel: int):
        super().__init__("no observable action", path, fuel)


def norm(r: Res, budget: Optional[CheckBudget] = None, path: Path = ()) -> ResR:
    """
    Collapse the finite delay runs of a resumption.

    Args:
        r: Delayful resumption
        budget: Its fuel bounds every run of delays
        path: Observation path leading to `r`, reported in errors

    Returns:
        A delay-free resumption. Observing a point where `r` needs more than
        `budget.fuel` delays raises NotResponsiveWithinBudget.
    """
    budget = budget or CheckBudget.from_config()

    def head():
        result = converges(r, budget.fuel)
        if not result.converged:
            raise NotResponsiveWithinBudget(path, budget.fuel)
        found = result.head
        if isinstance(found, Ret):
            return found
        if isinstance(found, Out):
            return Out(found.value, norm(found.tail, budget, path + (Step.out(found.value),)))
        return In(lambda v: norm(found.resume(v), budget, path + (Step.inp(v),)))

    key = ("norm", r.key, budget.fuel) if r.key is not None else None
    return ResR(head, key=key)


def emb(rr: Resumption) -> Res:
    """Read a delay-free resumption as a delayful one without delays."""
    def head():
        found = rr.observe()
        if isinstance(found, Out):
            return Out(found.value, emb(found.tail))
        if isinstance(found, In):
            return In(lambda v: emb(found.resume(v)))
        return found

    key = ("emb", rr.key) if rr.key is not None else None
    return Res(head, key=key)


def strong_bisim_r(rr: ResR, rr_star: ResR, budget: Optional[CheckBudget] = None) -> Verdict:
    """Strong bisimilarity of delay-free resumptions, checked on their embeddings."""
    return strong_bisim(emb(rr), emb(rr_star), budget)


def eval_delayfree(stmt: Stmt, state: State, budget: Optional[CheckBudget] = None) -> ResR:
    """
    Delay-free big-step semantics.

    Between two actions the statement runs silently over a stack of pending
    statements. Assignments and guard tests are free, but every re-entry into
    a loop body costs one unit of fuel, so a silent run cannot be collapsed
    forever.

    Args:
        stmt: Statement to evaluate
        state: Initial state
        budget: Fuel per silent run

    Returns:
        The delay-free resumption. Observing a silent run that needs more than
        `budget.fuel` loop re-entries raises NotResponsiveWithinBudget.
    """
    budget = budget or CheckBudget.from_config()
    return _resume((stmt,), state, budget.fuel, ())


def _resume(stack: Tuple[Stmt, ...], state: State, fuel: int, path: Path) -> ResR:
    return ResR(lambda: _next_action(stack, state, fuel, path), key=("delayfree", stack, state, fuel))


def _next_action(stack: Tuple[Stmt, ...], state: State, fuel: int, path: Path):
    remaining = fuel
    while stack:
        stmt, stack = stack[0], stack[1:]
        if isinstance(stmt, Skip):
            continue
        if isinstance(stmt, Seq):
            stack = (stmt.first, stmt.second) + stack
        elif isinstance(stmt, Assign):
            state = state.update(stmt.var, eval_expr(stmt.expr, state))
        elif isinstance(stmt, If):
            stack = (stmt.then if is_true(stmt.cond, state) else stmt.orelse,) + stack
        elif isinstance(stmt, While):
            if is_true(stmt.cond, state):
                if remaining == 0:
                    logger.debug(f"Silent run exceeded {fuel} loop iterations")
                    raise NotResponsiveWithinBudget(path, fuel)
                remaining -= 1
                stack = (stmt.body, stmt) + stack
        elif isinstance(stmt, Input):
            pending, var, before = stack, stmt.var, state
            return In(lambda v: _resume(pending, before.update(var, v), fuel, path + (Step.inp(v),)))
        else:
            value = eval_expr(stmt.expr, state)
            return Out(value, _resume(stack, state, fuel, path + (Step.out(value),)))
    return Ret(state)


def rep_r(n: int) -> ResR:
    """Output `n` forever."""
    return ResR.out(n, ResR.later(lambda: rep_r(n), key=("rep_r", n)))


def up_r(n: int) -> ResR:
    """Count up from `n`."""
    return ResR.out(n, ResR.later(lambda: up_r(n + 1), key=("up_r", n + 1)))
