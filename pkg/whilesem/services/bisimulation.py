"""
Strong bisimilarity and the convergence predicates on resumptions.

All checks are bounded by a CheckBudget. A Fails verdict always comes from a
concrete mismatch; running out of budget gives Holds (depth) or Unknown
(fuel, breadth, or an error raised while building a subject).
"""

import logging
from typing import Callable, List, Optional, Set, Tuple, Union

from whilesem.models.resumption import (
    Delay, In, Out, Resumption, converges, describe, same_head,
)
from whilesem.models.verdict import (
    BudgetExceeded, CheckBudget, Counter, Path, Step, Verdict, Witness,
)

logger = logging.getLogger(__name__)

Pair = Tuple[Path, Resumption, Resumption]
Expansion = Union[Verdict, List[Pair]]


def budget_reason(error: BudgetExceeded) -> str:
    """Unknown reason for a budget error raised while observing a subject."""
    return f"{type(error).__name__}: {error}"


def explore_pairs(left: Resumption, right: Resumption, budget: CheckBudget,
                  expand: Callable[[Path, Resumption, Resumption], Expansion],
                  reflexive: bool = True) -> Verdict:
    """
    Breadth-first exploration of related pairs, one layer per unit of depth.

    `expand` either settles a pair (Fails or Unknown) or lists the child pairs
    that must be related in turn. Pairs whose behaviour keys were already
    explored are not expanded again, nor are pairs with equal keys when the
    relation is reflexive.

    Args:
        left: Left root
        right: Right root
        budget: Depth bounds the layers, breadth the number of expanded pairs
        expand: Expansion of one pair
        reflexive: Whether pairs with equal keys hold without a look

    Returns:
        The first Fails in breadth-first order; otherwise the first Unknown;
        otherwise Holds
    """
    counter = Counter(budget.breadth)
    visited: Set[tuple] = set()
    undecided: Optional[Verdict] = None
    layer: List[Pair] = [((), left, right)]

    for _ in range(budget.depth):
        following: List[Pair] = []
        for path, lhs, rhs in layer:
            if lhs.key is not None and rhs.key is not None:
                if reflexive and lhs.key == rhs.key:
                    continue
                pair = (lhs.key, rhs.key)
                if pair in visited:
                    continue
                visited.add(pair)
            if not counter.spend():
                logger.debug(f"Node budget of {budget.breadth} spent")
                return undecided or Verdict.undecided("breadth", path)
            try:
                outcome = expand(path, lhs, rhs)
            except BudgetExceeded as e:
                outcome = Verdict.undecided(budget_reason(e), path)
            if isinstance(outcome, Verdict):
                if outcome.fails:
                    logger.debug(f"Mismatch after {counter.used} pairs: {outcome.render()}")
                    return outcome
                undecided = undecided or outcome
                continue
            following.extend(outcome)
        if not following:
            break
        layer = following

    logger.debug(f"Explored {counter.used} pairs")
    return undecided or Verdict.holding()


def children(path: Path, left_head, right_head, inputs) -> List[Pair]:
    """Child pairs under two matching non-terminal heads."""
    if isinstance(left_head, Delay):
        return [(path + (Step.delay(),), left_head.tail, right_head.tail)]
    if isinstance(left_head, Out):
        return [(path + (Step.out(left_head.value),), left_head.tail, right_head.tail)]
    if isinstance(left_head, In):
        return [(path + (Step.inp(v),), left_head.resume(v), right_head.resume(v))
                for v in inputs]
    return []


def strong_bisim(r: Resumption, r_star: Resumption, budget: Optional[CheckBudget] = None) -> Verdict:
    """
    Check strong bisimilarity: equal heads, delays included, layer by layer.

    Works for every resumption flavour; black holes only match black holes.

    Args:
        r: Left resumption
        r_star: Right resumption
        budget: Defaults to the configured budget

    Returns:
        Holds if no mismatch appears within `budget.depth` layers, Fails with
        the first mismatching path otherwise, Unknown if the node budget ran
        out or a subject could not be observed
    """
    budget = budget or CheckBudget.from_config()

    def expand(path: Path, lhs: Resumption, rhs: Resumption) -> Expansion:
        left_head, right_head = lhs.observe(), rhs.observe()
        if not same_head(left_head, right_head):
            return Verdict.failing(Witness(path, describe(left_head), describe(right_head)))
        return children(path, left_head, right_head, budget.inputs)

    return explore_pairs(r, r_star, budget, expand)


def diverges_within(r: Resumption, fuel: int) -> Verdict:
    """
    Bounded evidence of silent divergence.

    Fails (with the reached head) exactly when `converges(r, fuel)` converges;
    otherwise Unknown, since no amount of fuel certifies divergence.
    """
    try:
        result = converges(r, fuel)
    except BudgetExceeded as e:
        return Verdict.undecided(budget_reason(e))
    if result.converged:
        steps = (Step.delay(),) * result.delays_stripped
        return Verdict.failing(Witness(steps, describe(result.head), "silent divergence"))
    return Verdict.undecided("fuel")


def _converges_everywhere(r: Resumption, budget: CheckBudget,
                          diverged: Optional[Callable[[Resumption], bool]]) -> Verdict:
    counter = Counter(budget.breadth)
    explored = {}
    undecided: Optional[Verdict] = None
    stack = [((), r, budget.depth)]

    while stack:
        path, node, depth = stack.pop()
        if depth == 0:
            continue
        if node.key is not None:
            if explored.get(node.key, -1) >= depth:
                continue
            explored[node.key] = depth
        if not counter.spend():
            return undecided or Verdict.undecided("breadth", path)
        try:
            result = converges(node, budget.fuel)
        except BudgetExceeded as e:
            undecided = undecided or Verdict.undecided(budget_reason(e), path)
            continue
        if not result.converged:
            if diverged is None or not diverged(result.rest):
                undecided = undecided or Verdict.undecided("fuel", path)
            continue
        head = result.head
        if isinstance(head, Out):
            stack.append((path + (Step.out(head.value),), head.tail, depth - 1))
        elif isinstance(head, In):
            for v in reversed(budget.inputs):
                stack.append((path + (Step.inp(v),), head.resume(v), depth - 1))

    return undecided or Verdict.holding()


def responsive(r: Resumption, budget: Optional[CheckBudget] = None) -> Verdict:
    """
    Check that the resumption converges at every sampled point.

    Holds when every sampled path converges before each of its first
    `budget.depth` actions. Non-responsiveness has no finite counterexample,
    so a fuel exhaustion gives Unknown, never Fails.
    """
    return _converges_everywhere(r, budget or CheckBudget.from_config(), None)


def committed(r: Resumption, budget: Optional[CheckBudget] = None,
              diverged: Optional[Callable[[Resumption], bool]] = None) -> Verdict:
    """
    Check that every sampled point either converges or silently diverges.

    Args:
        r: Resumption to check
        budget: Defaults to the configured budget
        diverged: Optional divergence evidence, consulted on the remaining
            resumption whenever the fuel runs out; without it a fuel exhaustion
            is Unknown

    Returns:
        Holds or Unknown
    """
    return _converges_everywhere(r, budget or CheckBudget.from_config(), diverged)
