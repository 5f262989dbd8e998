"""
Small-step semantics over labelled configurations.
"""

import logging
from dataclasses import dataclass
from typing import ClassVar, List, Optional, Tuple, Union

from whilesem.models.configuration import LConf
from whilesem.models.resumption import Delay, In, Out, Res, Ret
from whilesem.models.syntax import (
    Assign, If, Input, Output, Seq, Skip, State, Stmt, While, eval_expr, is_true,
)
from whilesem.models.verdict import CheckBudget, Counter, Path, Step, Verdict, Witness

logger = logging.getLogger(__name__)

Configuration = Tuple[Stmt, State]


def step(stmt: Stmt, state: State) -> LConf:
    """
    One step of reduction, or terminality.

    Exactly one rule applies to every configuration, so this is total and
    deterministic.
    """
    if isinstance(stmt, Skip):
        return LConf.ret(state)
    if isinstance(stmt, Assign):
        return LConf.delay(Skip(), state.update(stmt.var, eval_expr(stmt.expr, state)))
    if isinstance(stmt, Input):
        return LConf.inp(Skip(), lambda v: state.update(stmt.var, v))
    if isinstance(stmt, Output):
        return LConf.out(eval_expr(stmt.expr, state), Skip(), state)
    if isinstance(stmt, If):
        branch = stmt.then if is_true(stmt.cond, state) else stmt.orelse
        return LConf.delay(branch, state)
    if isinstance(stmt, While):
        if is_true(stmt.cond, state):
            return LConf.delay(Seq(stmt.body, stmt), state)
        return LConf.delay(Skip(), state)
    if isinstance(stmt, Seq):
        first = step(stmt.first, state)
        if first.kind == LConf.RET:
            return step(stmt.second, first.state)
        return first.with_stmt(Seq(first.stmt, stmt.second))
    raise TypeError(f"Not a statement: {stmt!r}")


def run_small(stmt: Stmt, state: State) -> Res:
    """Unfold the small-step reductions of a configuration into a resumption."""
    def head():
        conf = step(stmt, state)
        if conf.kind == LConf.RET:
            return Ret(conf.state)
        if conf.kind == LConf.IN:
            return In(lambda v: run_small(conf.stmt, conf.resume(v)))
        if conf.kind == LConf.OUT:
            return Out(conf.value, run_small(conf.stmt, conf.state))
        return Delay(run_small(conf.stmt, conf.state))

    return Res(head, key=("small", stmt, state))


@dataclass(frozen=True)
class ConfConverged:
    """A non-silent outcome reached after `steps` silent steps."""
    conf: LConf
    steps: int

    converged: ClassVar[bool] = True


@dataclass(frozen=True)
class ConfFuelExhausted:
    """Still silent after `fuel` steps; `rest` is the configuration reached."""
    rest: Configuration
    fuel: int

    converged: ClassVar[bool] = False


def conf_converges(stmt: Stmt, state: State, fuel: int) -> Union[ConfConverged, ConfFuelExhausted]:
    """
    Step through silent steps until something other than a delay appears.

    Args:
        stmt: Statement of the configuration
        state: State of the configuration
        fuel: Maximum number of silent steps

    Returns:
        ConfConverged with the outcome and step count, or ConfFuelExhausted
    """
    if fuel < 1:
        raise ValueError(f"fuel must be at least 1, got {fuel}")
    conf = step(stmt, state)
    steps = 0
    while conf.is_silent:
        if steps == fuel:
            return ConfFuelExhausted((stmt, state), fuel)
        stmt, state = conf.stmt, conf.state
        conf = step(stmt, state)
        steps += 1
    return ConfConverged(conf, steps)


def run_config_trace(stmt: Stmt, state: State, limit: int) -> List[Configuration]:
    """
    The silent trajectory from a configuration.

    Returns the configuration itself followed by the target of each silent
    step, stopping after `limit` steps or at the first non-silent outcome.
    """
    trajectory = [(stmt, state)]
    for _ in range(limit):
        conf = step(stmt, state)
        if not conf.is_silent:
            break
        stmt, state = conf.stmt, conf.state
        trajectory.append((stmt, state))
    return trajectory


def conf_weak_bisim(left: Configuration, right: Configuration,
                    budget: Optional[CheckBudget] = None) -> Verdict:
    """
    Weak bisimilarity of configurations, driven by `conf_converges` and `step`.

    Decided exactly like `weak_bisim` on resumptions: matching outcomes after
    convergence, matched silent steps of `fuel + 1` when neither side
    converges, Unknown when only one side does.
    """
    budget = budget or CheckBudget.from_config()
    counter = Counter(budget.breadth)
    visited = set()
    undecided: Optional[Verdict] = None
    layer: List[Tuple[Path, Configuration, Configuration]] = [((), left, right)]

    for _ in range(budget.depth):
        following = []
        for path, lhs, rhs in layer:
            if lhs == rhs or (lhs, rhs) in visited:
                continue
            visited.add((lhs, rhs))
            if not counter.spend():
                return undecided or Verdict.undecided("breadth", path)

            lres, rres = conf_converges(*lhs, budget.fuel), conf_converges(*rhs, budget.fuel)
            if not lres.converged and not rres.converged:
                following.append((path + (Step.skip(budget.fuel + 1),),
                                  _silent_step(lres.rest), _silent_step(rres.rest)))
                continue
            if not (lres.converged and rres.converged):
                undecided = undecided or Verdict.undecided("fuel", path)
                continue

            lconf, rconf = lres.conf, rres.conf
            if lconf.kind != rconf.kind or lconf.value != rconf.value or (
                    lconf.kind == LConf.RET and lconf.state != rconf.state):
                return Verdict.failing(Witness(path, lconf.describe(), rconf.describe(),
                                               weak=True, fuel=budget.fuel))
            if lconf.kind == LConf.OUT:
                following.append((path + (Step.out(lconf.value),),
                                  (lconf.stmt, lconf.state), (rconf.stmt, rconf.state)))
            elif lconf.kind == LConf.IN:
                following.extend((path + (Step.inp(v),),
                                  (lconf.stmt, lconf.resume(v)), (rconf.stmt, rconf.resume(v)))
                                 for v in budget.inputs)
        if not following:
            break
        layer = following

    logger.debug(f"Explored {counter.used} configuration pairs")
    return undecided or Verdict.holding()


def _silent_step(conf: Configuration) -> Configuration:
    result = step(*conf)
    return result.stmt, result.state
