"""
Termination-sensitive weak bisimilarity of delayful resumptions.

Three checkers share one decision structure at each step: converge both sides
with the budget fuel; if both converge the heads must match, if both run out
the sides are stepped past the delays just seen (matched silent steps), and
if only one side converges the verdict is Unknown. They differ in how that
structure is expressed:

    weak_bisim            breadth-first, one layer per step
    weak_bisim_nested     an inductive layer (wb_down) nested in a corecursive
                          checker whose oracle defers children to a worklist
    weak_bisim_classical  as weak_bisim, but matched silent steps need
                          divergence evidence, which fuel never provides
"""

import logging
from typing import Callable, List, Optional

from whilesem.models.resumption import (
    Delay, In, Out, Resumption, advance, converges, describe, same_head,
)
from whilesem.models.verdict import (
    BudgetExceeded, CheckBudget, Counter, Path, Step, Verdict, Witness,
)
from whilesem.services.bisimulation import Expansion, budget_reason, explore_pairs

logger = logging.getLogger(__name__)

RelationOracle = Callable[[Resumption, Resumption, CheckBudget], Verdict]


def _converged_children(path: Path, left_head, right_head, budget: CheckBudget) -> Expansion:
    if not same_head(left_head, right_head):
        return Verdict.failing(Witness(path, describe(left_head), describe(right_head),
                                       weak=True, fuel=budget.fuel))
    if isinstance(left_head, Out):
        return [(path + (Step.out(left_head.value),), left_head.tail, right_head.tail)]
    if isinstance(left_head, In):
        return [(path + (Step.inp(v),), left_head.resume(v), right_head.resume(v))
                for v in budget.inputs]
    return []


def _weak_check(r: Resumption, r_star: Resumption, budget: CheckBudget,
                silent_steps: bool) -> Verdict:
    def expand(path: Path, lhs: Resumption, rhs: Resumption) -> Expansion:
        left, right = converges(lhs, budget.fuel), converges(rhs, budget.fuel)
        if left.converged and right.converged:
            return _converged_children(path, left.head, right.head, budget)
        if not left.converged and not right.converged and silent_steps:
            step = Step.skip(budget.fuel + 1)
            return [(path + (step,), advance(left.rest), advance(right.rest))]
        return Verdict.undecided("fuel", path)

    # without matched silent steps bot is not related to itself, so equal keys prove nothing
    return explore_pairs(r, r_star, budget, expand, reflexive=silent_steps)


def weak_bisim(r: Resumption, r_star: Resumption, budget: Optional[CheckBudget] = None) -> Verdict:
    """
    Check weak bisimilarity: equal up to finite runs of delays.

    Each unit of depth is either one matched action (both sides converge to
    the same ret/in/out head) or one matched silent step (neither side
    converges within the fuel; both skip `fuel + 1` delays).

    Args:
        r: Left resumption
        r_star: Right resumption
        budget: Defaults to the configured budget

    Returns:
        Fails with a weak witness on a head mismatch, Unknown where only one
        side converges, Holds otherwise
    """
    return _weak_check(r, r_star, budget or CheckBudget.from_config(), silent_steps=True)


def weak_bisim_classical(r: Resumption, r_star: Resumption,
                         budget: Optional[CheckBudget] = None) -> Verdict:
    """
    Classical-style weak bisimilarity.

    Convergent cases are decided as by `weak_bisim`. Two sides that both keep
    delaying would need divergence evidence on both sides, which a fuel bound
    cannot supply, so that case is Unknown.
    """
    return _weak_check(r, r_star, budget or CheckBudget.from_config(), silent_steps=False)


def wb_down(oracle: RelationOracle, r: Resumption, r_star: Resumption,
            budget: CheckBudget) -> Verdict:
    """
    The inductive layer: strip delays, then match one action.

    Delays are stripped from the left side first, then from the right, with
    `budget.fuel` shared by both sides. Children of matching heads are handed
    to the oracle together with the budget.

    Args:
        oracle: Relation the children must be in
        r: Left resumption
        r_star: Right resumption
        budget: Fuel for stripping, inputs for in-heads, passed to the oracle

    Returns:
        The oracle's verdict on the children (in-heads: their conjunction),
        Fails on mismatching heads, Unknown if the fuel runs out
    """
    fuel = budget.fuel
    left, right = r.observe(), r_star.observe()
    while isinstance(left, Delay) or isinstance(right, Delay):
        if fuel == 0:
            return Verdict.undecided("fuel")
        fuel -= 1
        if isinstance(left, Delay):
            left = left.tail.observe()
        else:
            right = right.tail.observe()

    if not same_head(left, right):
        return Verdict.failing(Witness((), describe(left), describe(right),
                                       weak=True, fuel=budget.fuel))
    if isinstance(left, Out):
        return oracle(left.tail, right.tail, budget).prefixed(Step.out(left.value))
    if isinstance(left, In):
        return Verdict.conjunction(
            oracle(left.resume(v), right.resume(v), budget).prefixed(Step.inp(v))
            for v in budget.inputs
        )
    return Verdict.holding()


def _action_steps(head, inputs) -> List[Step]:
    """Steps to the children `wb_down` hands its oracle under a converged head."""
    if isinstance(head, Out):
        return [Step.out(head.value)]
    if isinstance(head, In):
        return [Step.inp(v) for v in inputs]
    return []


def _at(path: Path, verdict: Verdict) -> Verdict:
    for step in reversed(path):
        verdict = verdict.prefixed(step)
    return verdict


class NestedWeakBisimulation:
    """
    Weak bisimilarity as induction nested in coinduction.

    Each pair either goes to `wb_down`, whose oracle defers the child pairs to
    the checker's worklist one level deeper, or matches a silent step when
    neither side converges. Once both sides converge on their own fuel,
    `wb_down` gets twice that fuel, enough to strip the delays of both.
    Pairs are settled depth-first in the order `wb_down` visits them.
    """

    def __init__(self, budget: CheckBudget):
        self.budget = budget
        self.counter = Counter(budget.breadth)
        self.explored = {}

    def check(self, r: Resumption, r_star: Resumption, depth: int) -> Verdict:
        """Check the pair with `depth` steps of exploration left."""
        pending = [((), r, r_star, depth)]
        undecided = None
        while pending:
            path, lhs, rhs, remaining = pending.pop()
            verdict = self._settle(path, lhs, rhs, remaining, pending)
            if verdict is None:
                continue
            if verdict.fails:
                return verdict
            undecided = undecided or verdict
        return undecided or Verdict.holding()

    def _settle(self, path: Path, r: Resumption, r_star: Resumption, depth: int,
                pending: list) -> Optional[Verdict]:
        """Decide one pair, pushing its children; None if nothing is wrong so far."""
        if depth == 0:
            return None
        if r.key is not None and r_star.key is not None:
            if r.key == r_star.key:
                return None
            pair = (r.key, r_star.key)
            if self.explored.get(pair, -1) >= depth:
                return None
            self.explored[pair] = depth
        if not self.counter.spend():
            return Verdict.undecided("breadth", path)

        fuel = self.budget.fuel
        try:
            left, right = converges(r, fuel), converges(r_star, fuel)
            if left.converged and right.converged:
                deferred = []

                def defer(a: Resumption, b: Resumption, _budget: CheckBudget) -> Verdict:
                    deferred.append((a, b))
                    return Verdict.holding()

                verdict = wb_down(defer, r, r_star, self.budget.with_fuel(2 * fuel))
                if not verdict.holds:
                    return _at(path, verdict)
                steps = _action_steps(left.head, self.budget.inputs)
                for step, (a, b) in reversed(list(zip(steps, deferred))):
                    pending.append((path + (step,), a, b, depth - 1))
                return None
            if not left.converged and not right.converged:
                step = Step.skip(fuel + 1)
                pending.append((path + (step,), advance(left.rest), advance(right.rest), depth - 1))
                return None
        except BudgetExceeded as e:
            return Verdict.undecided(budget_reason(e), path)
        return Verdict.undecided("fuel", path)


def weak_bisim_nested(r: Resumption, r_star: Resumption,
                      budget: Optional[CheckBudget] = None) -> Verdict:
    """
    Weak bisimilarity through the nested formulation.

    Agrees with `weak_bisim` on every verdict that is not Unknown.
    """
    budget = budget or CheckBudget.from_config()
    verdict = NestedWeakBisimulation(budget).check(r, r_star, budget.depth)
    if verdict.fails:
        # the inner layer reports its own fuel; replay converges with the per-side fuel
        witness = verdict.witness
        verdict = Verdict.failing(Witness(witness.steps, witness.left, witness.right,
                                          weak=True, fuel=budget.fuel))
    return verdict
