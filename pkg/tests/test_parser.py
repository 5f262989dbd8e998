import pytest
from hypothesis import given, settings

from tests.helpers import CORPUS_NAMES, exprs, stmts
from whilesem.models.syntax import (
    Assign, BinOp, If, Input, Int, Not, Output, Seq, Skip, Var, While, seq,
)
from whilesem.services.parser import ParseError, parse_program, pretty


def test_parse_statements():
    program = parse_program("input x; while x <> 0 do output x; input x end")
    assert program == Seq(Input("x"), While(BinOp("<>", Var("x"), Int(0)),
                                            Seq(Output(Var("x")), Input("x"))))


def test_sequence_is_right_associative():
    assert parse_program("skip; skip; skip") == Seq(Skip(), Seq(Skip(), Skip()))


def test_if_and_assignment():
    program = parse_program("if x < 0 then y := 0 - x else y := x end")
    assert program == If(BinOp("<", Var("x"), Int(0)),
                         Assign("y", BinOp("-", Int(0), Var("x"))), Assign("y", Var("x")))


def test_precedence():
    assert parse_program("output 1 + 2 * 3") == Output(
        BinOp("+", Int(1), BinOp("*", Int(2), Int(3))))
    assert parse_program("output not x < 1 and y = 2") == Output(
        BinOp("and", Not(BinOp("<", Var("x"), Int(1))), BinOp("=", Var("y"), Int(2))))
    assert parse_program("output x - 1 - 2") == Output(
        BinOp("-", BinOp("-", Var("x"), Int(1)), Int(2)))


def test_true_and_false_are_integers():
    assert parse_program("while false do skip end") == While(Int(0), Skip())
    assert parse_program("output true") == Output(Int(1))


def test_negative_literals():
    assert parse_program("x := -3") == Assign("x", Int(-3))
    assert parse_program("x := 1 - -3") == Assign("x", BinOp("-", Int(1), Int(-3)))


def test_comments_are_ignored():
    assert parse_program("# a comment\nskip # trailing\n") == Skip()


@pytest.mark.parametrize("source", ["x := ", "while x do skip", "output", "skip;", "x = 1"])
def test_syntax_errors(source):
    with pytest.raises(ParseError):
        parse_program(source)


def test_parse_error_position():
    with pytest.raises(ParseError) as error:
        parse_program("skip;\nx := ;")
    assert error.value.line == 2


@pytest.mark.parametrize("word", ["while", "if", "output", "end"])
def test_reserved_word_as_variable(word):
    with pytest.raises(ParseError) as error:
        parse_program(f"{word} := 1")
    assert word in error.value.message


def test_pretty_parenthesizes_nested_operators():
    expr = BinOp("*", BinOp("+", Var("x"), Int(1)), Not(Var("y")))
    assert pretty(expr) == "(x + 1) * (not y)"


def test_pretty_rejects_left_nested_sequences():
    with pytest.raises(ValueError):
        pretty(Seq(Seq(Skip(), Skip()), Skip()))


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_round_trip(name, programs):
    program = programs[name]
    assert parse_program(pretty(program)) == program


@settings(max_examples=300, deadline=None)
@given(stmts)
def test_statement_round_trip(stmt):
    assert parse_program(pretty(stmt)) == stmt


@settings(max_examples=300, deadline=None)
@given(exprs)
def test_expression_round_trip(expr):
    assert parse_program(f"output {pretty(expr)}") == Output(expr)


def test_round_trip_of_built_program():
    program = seq(Input("x"), If(BinOp(">=", Var("x"), Int(0)), Output(Var("x")),
                                 While(Int(1), Skip())))
    assert parse_program(pretty(program)) == program
