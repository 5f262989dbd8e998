import pytest
from hypothesis import given, settings

from tests.helpers import opposed, resumption_builders
from whilesem.models.resumption import Res, ResR, bot, echo, echo_div, rep, rep_fast, replay, up
from whilesem.models.syntax import State
from whilesem.models.verdict import CheckBudget, Step, Verdict
from whilesem.services.bigstep import eval_big
from whilesem.services.bisimulation import strong_bisim
from whilesem.services.delayfree import emb, up_r
from whilesem.services.parser import parse_program
from whilesem.services.weak_bisimulation import (
    NestedWeakBisimulation, wb_down, weak_bisim, weak_bisim_classical, weak_bisim_nested,
)
from whilesem.utils.data_generator import (
    from_spec, generate_resumption_pair, generate_resumption_spec, insert_delays, mutate,
)

RANDOM_BUDGET = CheckBudget(fuel=20, depth=10, inputs=(-2, -1, 0, 1, 2))


def always(verdict):
    return lambda r, r_star, budget: verdict


def delays(r, n):
    for _ in range(n):
        r = Res.delay(r)
    return r


def test_weak_bisim_examples(sigma):
    assert weak_bisim(rep(3), rep_fast(3), CheckBudget(fuel=10, depth=50)).holds
    assert weak_bisim(Res.ret(sigma), delays(Res.ret(sigma), 2), CheckBudget(fuel=3, depth=1)).holds


def test_echo_is_not_provably_related_to_echo_div(sigma):
    verdict = weak_bisim(echo(sigma), echo_div(), CheckBudget(fuel=50, depth=3, inputs=(0,)))
    assert verdict.unknown
    assert verdict.reason == "fuel"
    assert verdict.path == (Step.inp(0),)


def test_weak_bisim_mismatch_has_replayable_witness():
    verdict = weak_bisim(up(0), delays(up(0), 3), CheckBudget(fuel=5, depth=10))
    assert verdict.holds

    verdict = weak_bisim(up(0), up(1), CheckBudget(fuel=5, depth=10))
    assert verdict.fails
    assert verdict.witness.weak
    assert (verdict.witness.left, verdict.witness.right) == ("out 0", "out 1")
    assert replay(up(0), verdict.witness).head.value == 0


def test_matched_silent_steps():
    verdict = weak_bisim(bot(), delays(bot(), 7), CheckBudget(fuel=10, depth=20))
    assert verdict.holds


def test_termination_sensitive_on_bot(sigma):
    for fuel in (1, 5, 50):
        assert not weak_bisim(bot(), Res.ret(sigma), CheckBudget(fuel=fuel)).holds


@pytest.mark.parametrize("fuel", [2, 10, 100])
def test_output_then_divergence_is_not_output(fuel):
    terminating = eval_big(parse_program("output 1"), State())
    diverging = eval_big(parse_program("output 1; while true do skip end"), State())
    verdict = weak_bisim(terminating, diverging, CheckBudget(fuel=fuel, depth=10))
    assert not verdict.holds
    assert verdict.unknown
    assert verdict.path == (Step.out(1),)


def test_wb_down(sigma):
    budget = CheckBudget(fuel=1)
    assert wb_down(always(Verdict.holding()), Res.delay(Res.ret(sigma)), Res.ret(sigma), budget).holds
    assert wb_down(always(Verdict.holding()), Res.out(1, bot()), Res.out(2, bot()),
                   CheckBudget()).fails


def test_wb_down_hands_children_to_oracle():
    marker = Verdict.undecided("oracle")
    verdict = wb_down(always(marker), delays(Res.out(7, bot()), 4), Res.out(7, up(0)),
                      CheckBudget(fuel=4))
    assert verdict.reason == "oracle"
    assert verdict.path == (Step.out(7),)


def test_wb_down_shares_fuel_between_sides():
    left, right = delays(Res.out(1, bot()), 3), delays(Res.out(1, bot()), 3)
    assert wb_down(always(Verdict.holding()), left, right, CheckBudget(fuel=6)).holds
    assert wb_down(always(Verdict.holding()), left, right, CheckBudget(fuel=5)).unknown


def test_wb_down_conjoins_inputs():
    budget = CheckBudget(inputs=(0, 2))

    def oracle(r, r_star, _):
        return Verdict.holding() if r.observe() == r_star.observe() else Verdict.undecided("odd")

    left = Res.inp(lambda v: Res.ret(State(x=v)))
    right = Res.inp(lambda v: Res.ret(State(x=v * v)))
    verdict = wb_down(oracle, left, right, budget)
    assert verdict.unknown
    assert verdict.path == (Step.inp(2),)


def test_weak_bisim_nested_examples(sigma):
    assert weak_bisim_nested(rep(2), rep_fast(2), CheckBudget(fuel=10, depth=50)).holds
    assert weak_bisim_nested(echo(sigma), echo(sigma)).holds

    verdict = weak_bisim_nested(up(0), up(1), CheckBudget(fuel=5, depth=2))
    assert verdict.fails
    assert verdict.witness.fuel == 5
    assert replay(up(0), verdict.witness).head.value == 0


def test_nested_checker_memoizes_by_depth():
    checker = NestedWeakBisimulation(CheckBudget(fuel=5, depth=40))
    assert checker.check(rep(1), rep_fast(1), 40).holds
    assert checker.counter.used < 40


def counted_outputs(n, limit):
    if n == limit:
        return ResR.ret(State())
    return ResR.out(n, ResR.later(lambda: counted_outputs(n + 1, limit)))


def test_weak_bisim_nested_at_large_depth():
    budget = CheckBudget(fuel=5, depth=500, inputs=(0,))
    assert weak_bisim_nested(up(0), emb(up_r(0)), budget).holds

    verdict = weak_bisim_nested(up(0), emb(counted_outputs(0, 450)), budget)
    assert verdict.fails
    assert len(verdict.witness.steps) == 450
    assert verdict.witness.right == "ret {}"
    assert replay(up(0), verdict.witness).head.value == 450
    assert weak_bisim(up(0), emb(counted_outputs(0, 450)), budget).witness == verdict.witness

def test_weak_bisim_classical(sigma):
    assert weak_bisim_classical(Res.ret(sigma), Res.delay(Res.ret(sigma)),
                                CheckBudget(fuel=2, depth=1)).holds
    assert weak_bisim_classical(bot(), bot(), CheckBudget(fuel=100, depth=1)).unknown
    assert weak_bisim_classical(Res.out(1, bot()), Res.out(2, bot())).fails


def test_weak_and_nested_agree_on_random_pairs(rng):
    for _ in range(1000):
        left, right = generate_resumption_pair(rng, 4)
        weak = weak_bisim(from_spec(left), from_spec(right), RANDOM_BUDGET)
        nested = weak_bisim_nested(from_spec(left), from_spec(right), RANDOM_BUDGET)
        assert not opposed(weak, nested), (left, right)


def test_delay_insertion_is_weakly_invisible(rng):
    for _ in range(200):
        spec = generate_resumption_spec(rng, 4)
        verdict = weak_bisim(from_spec(spec), from_spec(insert_delays(rng, spec)), RANDOM_BUDGET)
        assert not verdict.fails


@settings(max_examples=500, deadline=None)
@given(resumption_builders)
def test_weak_bisim_is_reflexive(make):
    assert weak_bisim(make(), make(), RANDOM_BUDGET).holds
    assert weak_bisim_nested(make(), make(), RANDOM_BUDGET).holds


def test_weak_bisim_is_symmetric(rng):
    for _ in range(300):
        left, right = generate_resumption_pair(rng, 4)
        forward = weak_bisim(from_spec(left), from_spec(right), RANDOM_BUDGET)
        backward = weak_bisim(from_spec(right), from_spec(left), RANDOM_BUDGET)
        assert forward.outcome == backward.outcome


def test_weak_bisim_is_transitive_on_holds(rng):
    for _ in range(300):
        first = generate_resumption_spec(rng, 4)
        second = insert_delays(rng, first)
        third = insert_delays(rng, second) if rng.random() < 0.7 else mutate(rng, second)
        a, b, c = (from_spec(spec) for spec in (first, second, third))
        if weak_bisim(a, b, RANDOM_BUDGET).holds and weak_bisim(b, c, RANDOM_BUDGET).holds:
            assert not weak_bisim(a, c, RANDOM_BUDGET).fails


def test_strong_implies_weak(rng):
    strong_budget = RANDOM_BUDGET.with_depth(RANDOM_BUDGET.horizon)
    for _ in range(300):
        left, right = generate_resumption_pair(rng, 4)
        if strong_bisim(from_spec(left), from_spec(right), strong_budget).holds:
            assert weak_bisim(from_spec(left), from_spec(right), RANDOM_BUDGET).holds


def test_classical_holds_implies_weak_holds(rng):
    for _ in range(300):
        left, right = generate_resumption_pair(rng, 4)
        if weak_bisim_classical(from_spec(left), from_spec(right), RANDOM_BUDGET).holds:
            assert weak_bisim(from_spec(left), from_spec(right), RANDOM_BUDGET).holds
