import pytest

from tests.helpers import CORPUS_NAMES
from whilesem.models.configuration import LConf
from whilesem.models.resumption import bot
from whilesem.models.syntax import Assign, If, Int, Output, Seq, Skip, State, Var, While
from whilesem.models.verdict import CheckBudget, Step
from whilesem.services.bigstep import eval_big
from whilesem.services.bisimulation import strong_bisim
from whilesem.services.parser import parse_program
from whilesem.services.smallstep import (
    conf_converges, conf_weak_bisim, run_config_trace, run_small, step,
)
from whilesem.services.weak_bisimulation import weak_bisim

LOOP = While(Int(1), Skip())


def test_step_rules():
    sigma = State(x=2)
    assert step(Skip(), sigma) == LConf.ret(sigma)
    assert step(Assign("x", Int(5)), sigma) == LConf.delay(Skip(), State(x=5))
    assert step(Output(Var("x")), sigma) == LConf.out(2, Skip(), sigma)
    assert step(If(Int(0), Skip(), Output(Int(1))), sigma) == LConf.delay(Output(Int(1)), sigma)
    assert step(LOOP, sigma) == LConf.delay(Seq(Skip(), LOOP), sigma)
    assert step(While(Int(0), Skip()), sigma) == LConf.delay(Skip(), sigma)


def test_step_input_resumes_with_value():
    conf = step(parse_program("input y"), State(x=1))
    assert conf.kind == LConf.IN
    assert conf.stmt == Skip()
    assert conf.resume(4) == State(x=1, y=4)


def test_step_sequence():
    sigma = State()
    assert step(Seq(Skip(), Output(Int(3))), sigma) == LConf.out(3, Skip(), sigma)
    assert step(Seq(Assign("x", Int(1)), Skip()), sigma) == LConf.delay(Seq(Skip(), Skip()), State(x=1))


def test_conf_converges():
    result = conf_converges(parse_program("x := 1; y := 2; output x + y"), State(), 10)
    assert result.converged
    assert result.steps == 2
    assert result.conf == LConf.out(3, Skip(), State(x=1, y=2))


def test_conf_converges_on_loop():
    result = conf_converges(LOOP, State(), 10)
    assert not result.converged
    assert result.rest == (Seq(Skip(), LOOP), State())
    assert conf_converges(Skip(), State(), 1).steps == 0
    with pytest.raises(ValueError):
        conf_converges(Skip(), State(), 0)


def test_run_config_trace():
    trajectory = run_config_trace(parse_program("x := 1; output x"), State(), 10)
    assert trajectory == [(parse_program("x := 1; output x"), State()),
                          (Seq(Skip(), Output(Var("x"))), State(x=1))]
    assert len(run_config_trace(LOOP, State(), 5)) == 6


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_big_and_small_step_agree(name, programs):
    program = programs[name]
    budget = CheckBudget(fuel=100, depth=200, inputs=(-2, -1, 0, 1, 2))
    assert strong_bisim(eval_big(program, State()), run_small(program, State()), budget).holds


def test_small_step_loop_is_bot():
    budget = CheckBudget(fuel=10, depth=100)
    assert strong_bisim(run_small(LOOP, State()), bot(), budget).holds


def test_conf_weak_bisim_examples(programs):
    sigma = State(x=7)
    budget = CheckBudget(fuel=10, depth=50, inputs=(0,))
    loop, hoisted = programs["licm_loop"], programs["licm_hoisted"]
    assert conf_weak_bisim((loop, sigma), (hoisted, sigma), budget).holds
    assert conf_weak_bisim((LOOP, State()), (Seq(Skip(), LOOP), State()), budget).holds

    verdict = conf_weak_bisim((parse_program("output 1"), sigma), (parse_program("output 2"), sigma))
    assert verdict.fails
    assert (verdict.witness.left, verdict.witness.right) == ("out 1", "out 2")


def test_conf_weak_bisim_termination_sensitive():
    verdict = conf_weak_bisim((Skip(), State()), (LOOP, State()), CheckBudget(fuel=20))
    assert verdict.unknown
    assert verdict.reason == "fuel"


@pytest.mark.parametrize("left, right", [
    ("licm_loop", "licm_hoisted"),
    ("mult", "mult_opt"),
    ("echo", "counter"),
    ("diverge", "output_then_diverge"),
    ("countdown", "echo"),
    ("abs", "max"),
])
def test_configuration_and_resumption_checks_agree(left, right, programs):
    sigma = State()
    budget = CheckBudget(fuel=30, depth=8, inputs=(-1, 0, 2))
    on_resumptions = weak_bisim(run_small(programs[left], sigma), run_small(programs[right], sigma),
                                budget)
    on_configurations = conf_weak_bisim((programs[left], sigma), (programs[right], sigma), budget)
    assert on_resumptions.outcome == on_configurations.outcome
    if on_resumptions.fails:
        assert on_resumptions.witness == on_configurations.witness


def test_matched_silent_steps_on_configurations():
    verdict = conf_weak_bisim((LOOP, State()), (parse_program("x := 0; while true do skip end"),
                                                State()), CheckBudget(fuel=5, depth=10))
    assert verdict.holds
    verdict = conf_weak_bisim((parse_program("output 1; while true do skip end"), State()),
                              (parse_program("output 1"), State()), CheckBudget(fuel=5, depth=10))
    assert verdict.unknown
    assert verdict.path == (Step.out(1),)
