"""
Data generator module for creating sample resumptions and programs.

This module provides functions to generate random resumption trees, pairs of
related resumptions and random While programs for property checks and
demonstrations. Every function takes a `random.Random` so runs are
reproducible from a seed.
"""

import random
from typing import Any, List, Tuple

from whilesem.models.resumption import Res, bot, rep, rep_fast, up
from whilesem.models.syntax import (ARITHMETIC_OPS, COMPARISON_OPS, Assign, BinOp, Expr, If,
                                    Input, Int, Not, Output, Skip, State, Stmt, Var, While, seq)

# Variable names used by generated states and programs
VARIABLE_NAMES = ["x", "y", "z", "i", "n"]

# Values used for outputs, literals and return bindings
SAMPLE_VALUES = [-2, -1, 0, 1, 2, 3, 5]

# Infinite tails that close off a finite random tree
TAIL_KINDS = ["bot", "rep", "rep_fast", "up"]

# Node kinds of the finite part, weighted towards visible actions
NODE_KINDS = ["ret", "out", "out", "delay", "delay", "in"]

Spec = Tuple[Any, ...]


def generate_state_bindings(rng: random.Random) -> Tuple[Tuple[str, int], ...]:
    """
    Generate sorted state bindings.

    Returns:
        Between zero and two (name, value) pairs
    """
    names = sorted(rng.sample(VARIABLE_NAMES, rng.randint(0, 2)))
    return tuple((name, rng.choice(SAMPLE_VALUES)) for name in names)


def generate_tail(rng: random.Random) -> Spec:
    kind = rng.choice(TAIL_KINDS)
    if kind == "bot":
        return ("bot",)
    return (kind, rng.choice(SAMPLE_VALUES))


def generate_resumption_spec(rng: random.Random, depth: int) -> Spec:
    """
    Generate the description of a random resumption.

    The finite part is at most `depth` nodes deep; every branch that is not a
    `ret` ends in one of the infinite tails.

    Args:
        rng: Random source
        depth: Maximum depth of the finite part

    Returns:
        A nested tuple accepted by `from_spec`
    """
    if depth <= 0:
        return generate_tail(rng)
    kind = rng.choice(NODE_KINDS)
    if kind == "ret":
        return ("ret", generate_state_bindings(rng))
    if kind == "out":
        return ("out", rng.choice(SAMPLE_VALUES), generate_resumption_spec(rng, depth - 1))
    if kind == "delay":
        return ("delay", generate_resumption_spec(rng, depth - 1))
    branches = rng.randint(1, 2)
    return ("in", tuple(generate_resumption_spec(rng, depth - 1) for _ in range(branches)))


def from_spec(spec: Spec) -> Res:
    """
    Build the resumption a spec describes.

    An `in` node with children c0..ck resumes input v with child v mod (k+1).
    Equal specs build resumptions with equal behaviour keys.
    """
    kind = spec[0]
    if kind == "bot":
        return bot()
    if kind == "rep":
        return rep(spec[1])
    if kind == "rep_fast":
        return rep_fast(spec[1])
    if kind == "up":
        return up(spec[1])
    if kind == "ret":
        return Res.ret(State(dict(spec[1])))
    if kind == "out":
        return Res.out(spec[1], Res.later(lambda: from_spec(spec[2]), key=("spec", spec[2])))
    if kind == "delay":
        return Res.delay(Res.later(lambda: from_spec(spec[1]), key=("spec", spec[1])))
    if kind == "in":
        children = spec[1]
        return Res.inp(lambda v: from_spec(children[v % len(children)]), key=("spec", spec))
    raise ValueError(f"Unknown resumption spec: {kind}")


def insert_delays(rng: random.Random, spec: Spec) -> Spec:
    """
    Copy a spec, adding a random number of delays in front of some nodes.

    The result is weakly bisimilar to the original when the original has no
    silently diverging tail, and usually not strongly bisimilar.
    """
    kind = spec[0]
    if kind == "out":
        inner = ("out", spec[1], insert_delays(rng, spec[2]))
    elif kind == "delay":
        inner = ("delay", insert_delays(rng, spec[1]))
    elif kind == "in":
        inner = ("in", tuple(insert_delays(rng, child) for child in spec[1]))
    else:
        inner = spec
    for _ in range(rng.choice([0, 0, 1, 2])):
        inner = ("delay", inner)
    return inner


def mutate(rng: random.Random, spec: Spec) -> Spec:
    """Copy a spec with one value or tail replaced somewhere along a random branch."""
    kind = spec[0]
    if kind == "out" and rng.random() < 0.5:
        return ("out", spec[1], mutate(rng, spec[2]))
    if kind == "delay":
        return ("delay", mutate(rng, spec[1]))
    if kind == "in":
        children = list(spec[1])
        index = rng.randrange(len(children))
        children[index] = mutate(rng, children[index])
        return ("in", tuple(children))
    if kind == "out":
        return ("out", rng.choice(SAMPLE_VALUES), spec[2])
    if kind == "ret":
        return ("ret", generate_state_bindings(rng))
    return generate_tail(rng)


def generate_resumption_pair(rng: random.Random, depth: int) -> Tuple[Spec, Spec]:
    """
    Generate two related resumption specs.

    The second spec is the first one unchanged, with delays inserted, with a
    mutation, or drawn independently, so checkers see equal, weakly equal and
    different pairs.
    """
    left = generate_resumption_spec(rng, depth)
    variant = rng.choice(["same", "delays", "delays", "mutate", "fresh"])
    if variant == "same":
        return left, left
    if variant == "delays":
        return left, insert_delays(rng, left)
    if variant == "mutate":
        return left, insert_delays(rng, mutate(rng, left))
    return left, generate_resumption_spec(rng, depth)


def generate_expression(rng: random.Random, depth: int, boolean: bool = False) -> Expr:
    """
    Generate a random expression.

    Args:
        rng: Random source
        depth: Maximum operator nesting
        boolean: Generate a guard (comparison, `not` or literal) rather than a term
    """
    if boolean:
        if depth <= 0 or rng.random() < 0.2:
            return Int(rng.choice([0, 1]))
        if rng.random() < 0.2:
            return Not(generate_expression(rng, depth - 1, boolean=True))
        return BinOp(rng.choice(COMPARISON_OPS), generate_expression(rng, depth - 1),
                     generate_expression(rng, depth - 1))
    if depth <= 0 or rng.random() < 0.4:
        if rng.random() < 0.5:
            return Int(rng.choice(SAMPLE_VALUES))
        return Var(rng.choice(VARIABLE_NAMES))
    return BinOp(rng.choice(ARITHMETIC_OPS), generate_expression(rng, depth - 1),
                 generate_expression(rng, depth - 1))


def generate_program(rng: random.Random, depth: int, length: int = 3) -> Stmt:
    """
    Generate a random program with right-nested sequences only.

    Args:
        rng: Random source
        depth: Maximum nesting of `if` and `while`
        length: Maximum number of statements per block

    Returns:
        The generated statement
    """
    stmts: List[Stmt] = []
    for _ in range(rng.randint(1, length)):
        kind = rng.choice(["skip", "assign", "assign", "input", "output", "if", "while"])
        if kind in ("if", "while") and depth <= 0:
            kind = "assign"
        if kind == "skip":
            stmts.append(Skip())
        elif kind == "assign":
            stmts.append(Assign(rng.choice(VARIABLE_NAMES), generate_expression(rng, 2)))
        elif kind == "input":
            stmts.append(Input(rng.choice(VARIABLE_NAMES)))
        elif kind == "output":
            stmts.append(Output(generate_expression(rng, 2)))
        elif kind == "if":
            stmts.append(If(generate_expression(rng, 2, boolean=True),
                            generate_program(rng, depth - 1, length),
                            generate_program(rng, depth - 1, length)))
        else:
            stmts.append(While(generate_expression(rng, 2, boolean=True),
                               generate_program(rng, depth - 1, length)))
    return seq(*stmts)
