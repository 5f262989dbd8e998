import pytest

from whilesem.models.resumption import In, Out, Res, Ret, bot, converges, describe, render, replay, sum_res, up
from whilesem.models.syntax import Assign, Input, Int, Output, Seq, Skip, State, Var, seq
from whilesem.models.verdict import CheckBudget
from whilesem.services.bigstep import eval_big, exec_seq, final_state
from whilesem.services.bisimulation import strong_bisim
from whilesem.services.delayfree import eval_delayfree, strong_bisim_r
from whilesem.services.parser import parse_program
from whilesem.services.weak_bisimulation import weak_bisim


def delays_before_head(source, state=None):
    result = converges(eval_big(parse_program(source), state or State()), 100)
    assert result.converged
    return result.delays_stripped, result.head


@pytest.mark.parametrize("source, expected", [
    ("skip", 0),
    ("x := 1", 1),
    ("x := 1; y := 2", 2),
    ("if true then skip else skip end", 1),
    ("if false then x := 1 else x := 2 end", 2),
    ("while false do skip end", 1),
    ("x := 0; while x < 3 do x := x + 1 end", 8),
])
def test_delays_come_from_assignments_and_guards(source, expected):
    stripped, head = delays_before_head(source)
    assert stripped == expected
    assert isinstance(head, Ret)


def test_input_and_output_cost_nothing():
    assert isinstance(delays_before_head("input x")[1], In)
    assert delays_before_head("output 4") == (0, Out(4, None))
    assert delays_before_head("skip; output 4") == (0, Out(4, None))


def test_render_of_small_programs():
    assert render(eval_big(parse_program("x := 1; output x"), State()), 5) == "δ.out 1.ret {x=1}"
    assert render(eval_big(parse_program("while true do skip end"), State()), 3) == "δ.δ.δ.…"
    assert render(eval_big(parse_program("input x"), State()), 2, inputs=(3,)) == "in{3↦ret {x=3}}"


def test_echo_transcript_shape(programs):
    r = eval_big(programs["echo"], State())
    assert render(r, 6, inputs=(0, 5)) == "in{0↦δ.ret {x=0},5↦δ.out 5.in{0↦δ.ret {x=0},5↦δ.out 5.…}}"


def test_counter_is_input_then_counting(programs):
    budget = CheckBudget(fuel=10, depth=60, inputs=(0, 1, 5))
    counting = Res.inp(lambda n: up(n))
    assert strong_bisim(eval_big(programs["counter"], State()), counting, budget).holds


def test_adder_matches_sum_resumption(programs):
    budget = CheckBudget(fuel=10, depth=40, inputs=(0, 1, 5))
    assert strong_bisim(eval_big(programs["sum"], State()), sum_res(), budget).holds


def test_adder_is_not_a_multiplier(programs):
    budget = CheckBudget(fuel=10, depth=40, inputs=(0, 1, 5))
    verdict = strong_bisim(eval_big(programs["sum"], State()), eval_big(programs["mult"], State()),
                           budget)
    assert verdict.fails


def test_exec_seq():
    sigma = State(x=3)
    assert render(exec_seq(Output(Var("x")), Res.ret(sigma)), 3) == "out 3.ret {x=3}"
    assert render(exec_seq(Assign("x", Int(0)), Res.out(1, Res.ret(sigma))), 4) == "out 1.δ.ret {x=0}"
    assert render(exec_seq(Skip(), bot()), 3) == "δ.δ.δ.…"


def test_exec_seq_copies_input_branches():
    r = exec_seq(Output(Var("x")), Res.inp(lambda v: Res.ret(State(x=v))))
    assert render(r, 3, inputs=(1, 2)) == "in{1↦out 1.ret {x=1},2↦out 2.ret {x=2}}"


def test_long_runs_of_skips_are_observed_without_nesting():
    program = seq(*[Skip()] * 1000, Output(Int(1)))
    assert render(eval_big(program, State()), 3) == "out 1.ret {}"

    padded = seq(*[Skip()] * 1000, Assign("x", Int(2)), *[Skip()] * 1000)
    assert final_state(padded, State(), 5) == State(x=2)


def test_left_nested_skips_keep_statement_order():
    program = Seq(Seq(Skip(), Seq(Skip(), Output(Int(1)))), Output(Int(2)))
    assert render(eval_big(program, State()), 4) == "out 1.out 2.ret {}"

def test_final_state(programs):
    assert final_state(programs["factorial"], State(), 1000) == State(n=0, r=120)
    assert final_state(programs["assign"], State(), 10) == State(x=1, y=3, z=3)
    assert final_state(programs["nested_loops"], State(), 1000) == State(i=3, j=2, s=3)


def test_final_state_of_diverging_program(programs):
    assert final_state(programs["diverge"], State(), 500) is None
    assert final_state(programs["factorial"], State(), 3) is None


def test_final_state_rejects_io(programs):
    with pytest.raises(ValueError):
        final_state(programs["echo"], State(), 10)
    with pytest.raises(ValueError):
        final_state(Input("x"), State(), 10)


def test_loop_invariant_code_motion(programs):
    sigma = State(x=7)
    loop, hoisted = programs["licm_loop"], programs["licm_hoisted"]
    budget = CheckBudget(fuel=10, depth=50, inputs=(0,))

    assert weak_bisim(eval_big(loop, sigma), eval_big(hoisted, sigma), budget).holds

    verdict = strong_bisim(eval_big(loop, sigma), eval_big(hoisted, sigma), budget)
    assert verdict.fails
    assert describe(replay(eval_big(loop, sigma), verdict.witness)) == verdict.witness.left

    assert strong_bisim_r(eval_delayfree(loop, sigma, budget), eval_delayfree(hoisted, sigma, budget),
                          budget).holds
