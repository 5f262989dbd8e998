"""
Service tying the semantics engines and the checkers together for the CLI.
"""

import logging
from typing import Any, Callable, Dict, List, Optional

from whilesem.models.resumption import Resumption, render
from whilesem.models.syntax import State, Stmt
from whilesem.models.verdict import BudgetExceeded, CheckBudget, Verdict, render_path
from whilesem.services.bigstep import eval_big
from whilesem.services.bisimulation import strong_bisim
from whilesem.services.classical import emb_c, eval_classical, norm_c, strong_bisim_c
from whilesem.services.delayfree import emb, eval_delayfree, norm, strong_bisim_r
from whilesem.services.smallstep import run_small
from whilesem.services.weak_bisimulation import weak_bisim, weak_bisim_classical, weak_bisim_nested

logger = logging.getLogger(__name__)


class SemanticsService:
    """Service for evaluating programs and checking their behaviours."""

    SEMANTICS = ("big", "small", "delayfree", "classical")
    RELATIONS = ("strong", "weak", "weak-nested", "weak-classical",
                 "strong-delayfree", "strong-classical")

    def __init__(self, budget: Optional[CheckBudget] = None):
        """
        Initialize the service.

        Args:
            budget: Budget for evaluations and checks; defaults to the configured one
        """
        self.budget = budget or CheckBudget.from_config()

    def evaluate(self, program: Stmt, state: State, semantics: str = "big") -> Resumption:
        """
        Evaluate a program under one of the semantics.

        Args:
            program: Program to evaluate
            state: Initial state
            semantics: One of SEMANTICS

        Returns:
            The program's resumption (delayful, delay-free or classical-style)

        Raises:
            ValueError: If the semantics is unknown
        """
        if semantics == "big":
            return eval_big(program, state)
        if semantics == "small":
            return run_small(program, state)
        if semantics == "delayfree":
            return eval_delayfree(program, state, self.budget)
        if semantics == "classical":
            return eval_classical(program, state, self.budget)
        raise ValueError(f"Unknown semantics: {semantics}")

    def check(self, relation: str, left: Stmt, right: Stmt, state: State) -> Verdict:
        """
        Check two programs, run from the same state, against a relation.

        Delayful relations compare the big-step resumptions; `strong-delayfree`
        and `strong-classical` compare the delay-free and classical-style ones.

        Raises:
            ValueError: If the relation is unknown
        """
        checkers: Dict[str, Callable[[], Verdict]] = {
            "strong": lambda: strong_bisim(eval_big(left, state), eval_big(right, state), self.budget),
            "weak": lambda: weak_bisim(eval_big(left, state), eval_big(right, state), self.budget),
            "weak-nested": lambda: weak_bisim_nested(
                eval_big(left, state), eval_big(right, state), self.budget),
            "weak-classical": lambda: weak_bisim_classical(
                eval_big(left, state), eval_big(right, state), self.budget),
            "strong-delayfree": lambda: strong_bisim_r(
                eval_delayfree(left, state, self.budget),
                eval_delayfree(right, state, self.budget), self.budget),
            "strong-classical": lambda: strong_bisim_c(
                eval_classical(left, state, self.budget),
                eval_classical(right, state, self.budget), self.budget),
        }
        if relation not in checkers:
            raise ValueError(f"Unknown relation: {relation}")
        verdict = checkers[relation]()
        logger.debug(f"{relation}: {verdict.render()}")
        return verdict

    def compare(self, program: Stmt, state: State) -> List[Dict[str, Any]]:
        """
        Cross-check the four semantics of one program.

        Returns:
            One row per check with the keys 'check', 'relation', 'verdict' and
            'detail'
        """
        def big():
            return eval_big(program, state)

        def delayfree():
            return eval_delayfree(program, state, self.budget)

        def classical():
            return eval_classical(program, state, self.budget)

        checks = [
            ("big vs small", "strong",
             lambda: strong_bisim(big(), run_small(program, state), self.budget)),
            ("big vs emb(delayfree)", "weak",
             lambda: weak_bisim(big(), emb(delayfree()), self.budget)),
            ("delayfree vs norm(big)", "strong",
             lambda: strong_bisim_r(delayfree(), norm(big(), self.budget), self.budget)),
            ("big vs emb(classical)", "weak",
             lambda: weak_bisim(big(), emb_c(classical()), self.budget)),
            ("classical vs norm(big)", "strong",
             lambda: strong_bisim_c(classical(), norm_c(big(), self.budget), self.budget)),
        ]
        rows = []
        for name, relation, run in checks:
            verdict = run()
            if verdict.unknown:
                logger.warning(f"{name}: {verdict.render()}")
            rows.append({
                "check": name,
                "relation": relation,
                "verdict": verdict.outcome.value,
                "detail": _detail(verdict),
            })
        return rows

    def traces(self, program: Stmt, state: State, depth: int) -> List[Dict[str, str]]:
        """Bounded prefix of the program's resumption under every semantics."""
        rows = []
        for semantics in self.SEMANTICS:
            try:
                prefix = render(self.evaluate(program, state, semantics), depth, self.budget.inputs)
            except BudgetExceeded as e:
                prefix = f"{type(e).__name__} after {render_path(e.path)}"
            rows.append({"semantics": semantics, "prefix": prefix})
        return rows


def _detail(verdict: Verdict) -> str:
    if verdict.fails:
        return verdict.witness.render()
    if verdict.unknown:
        return f"{verdict.reason} at {render_path(verdict.path)}"
    return ""
