"""
Delayful big-step semantics: statements evaluate to delayful resumptions.

Assignments and guard tests each cost exactly one delay; skip, input and
output cost none. Sequencing extends the resumption of the first statement
at every terminal leaf, which is what lets loops run forever productively.
"""

import logging
from typing import Optional

from whilesem.models.resumption import Delay, Head, In, Out, Res, Ret, converges, describe
from whilesem.models.syntax import (
    Assign, If, Input, Output, Seq, Skip, State, Stmt, While, eval_expr, is_true,
)

logger = logging.getLogger(__name__)


def eval_big(stmt: Stmt, state: State) -> Res:
    """
    Evaluate a statement in a state to its resumption.

    The result is built on demand, so this returns immediately even for
    statements that never terminate.

    Args:
        stmt: Statement to evaluate
        state: Initial state

    Returns:
        The delayful resumption of the statement
    """
    if isinstance(stmt, Skip):
        return Res.ret(state)
    if isinstance(stmt, Assign):
        return Res.delay(Res.ret(state.update(stmt.var, eval_expr(stmt.expr, state))))
    if isinstance(stmt, Input):
        return Res.inp(lambda v: Res.ret(state.update(stmt.var, v)), key=("big", stmt, state))
    if isinstance(stmt, Output):
        return Res.out(eval_expr(stmt.expr, state), Res.ret(state))
    if isinstance(stmt, If):
        branch = stmt.then if is_true(stmt.cond, state) else stmt.orelse
        return exec_seq(branch, Res.delay(Res.ret(state)))
    if isinstance(stmt, While):
        if is_true(stmt.cond, state):
            return exec_seq(stmt, exec_seq(stmt.body, Res.delay(Res.ret(state))))
        return Res.delay(Res.ret(state))
    if isinstance(stmt, Seq):
        return exec_seq(stmt.second, eval_big(stmt.first, state))
    raise TypeError(f"Not a statement: {stmt!r}")


def exec_seq(stmt: Stmt, r: Res) -> Res:
    """
    Run `stmt` after `r`: copy the actions of `r`, continuing as
    `eval_big(stmt, σ)` at every leaf `ret σ`.
    """
    def head():
        current = r.observe()
        if isinstance(current, Ret):
            return _first_head(stmt, current.state)
        if isinstance(current, In):
            return In(lambda v: exec_seq(stmt, current.resume(v)))
        if isinstance(current, Out):
            return Out(current.value, exec_seq(stmt, current.tail))
        return Delay(exec_seq(stmt, current.tail))

    key = ("seq", stmt, r.key) if r.key is not None else None
    return Res(head, key=key)


def _first_head(stmt: Stmt, state: State) -> Head:
    """
    Head of `eval_big(stmt, state)`, stepping over leading skips in a loop.

    Skip is the only statement whose resumption starts with `ret`.
    """
    pending = []
    while True:
        if isinstance(stmt, Seq):
            pending.append(stmt.second)
            stmt = stmt.first
        elif isinstance(stmt, Skip) and pending:
            stmt = pending.pop()
        else:
            break

    r = eval_big(stmt, state)
    for rest in reversed(pending):
        r = exec_seq(rest, r)
    return r.observe()


def final_state(stmt: Stmt, state: State, fuel: int) -> Optional[State]:
    """
    Textbook reading for programs without I/O: the final state, if any.

    Args:
        stmt: Statement to run
        state: Initial state
        fuel: Maximum number of silent steps

    Returns:
        The final state, or None if the run is still silent after `fuel` steps

    Raises:
        ValueError: If the program performs I/O before terminating
    """
    result = converges(eval_big(stmt, state), fuel)
    if not result.converged:
        logger.debug(f"No final state within {fuel} steps")
        return None
    if not isinstance(result.head, Ret):
        raise ValueError(f"Program performs I/O ({describe(result.head)}) before terminating")
    return result.head.state
