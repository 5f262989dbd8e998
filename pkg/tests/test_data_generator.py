import random

import pytest

from whilesem.models.resumption import render
from whilesem.services.parser import parse_program, pretty
from whilesem.utils.data_generator import (
    from_spec, generate_program, generate_resumption_pair, generate_resumption_spec, insert_delays,
)


def test_from_spec_builds_described_tree():
    spec = ("delay", ("out", 3, ("in", (("ret", (("x", 1),)), ("bot",)))))
    assert render(from_spec(spec), 5, inputs=(0, 1)) == "δ.out 3.in{0↦ret {x=1},1↦δ.δ.…}"


def test_from_spec_rejects_unknown_kind():
    with pytest.raises(ValueError):
        from_spec(("loop",))


def test_equal_specs_give_equal_keys(rng):
    spec = generate_resumption_spec(rng, 4)
    assert from_spec(spec).key == from_spec(spec).key


def test_generation_is_reproducible():
    first = [generate_resumption_pair(random.Random(7), 4) for _ in range(3)]
    second = [generate_resumption_pair(random.Random(7), 4) for _ in range(3)]
    assert first == second


def test_insert_delays_only_adds_delays(rng):
    spec = ("out", 1, ("ret", ()))
    for _ in range(20):
        padded = insert_delays(rng, spec)
        assert render(from_spec(padded), 12).replace("δ.", "") == "out 1.ret {}"


def test_generated_programs_round_trip(rng):
    for _ in range(50):
        program = generate_program(rng, 2)
        assert parse_program(pretty(program)) == program
