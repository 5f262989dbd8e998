"""Shared corpus lists and hypothesis strategies for the test suite."""

from hypothesis import strategies as st

from whilesem.models.resumption import Res, bot, rep, rep_fast, up
from whilesem.models.syntax import (
    ARITHMETIC_OPS, COMPARISON_OPS, Assign, BinOp, If, Input, Int, Not, Output, Seq, Skip, State,
    Var, While,
)
from whilesem.utils.corpus import load_corpus, performs_io

# corpus programs that silently diverge on some sampled input
DIVERGING = frozenset(["diverge", "output_then_diverge", "drift", "mult", "mult_opt"])

CORPUS = load_corpus()
CORPUS_NAMES = [entry.name for entry in CORPUS]
RESPONSIVE_NAMES = [name for name in CORPUS_NAMES if name not in DIVERGING]
IO_FREE_NAMES = [entry.name for entry in CORPUS if not performs_io(entry.program())]


def opposed(first, second):
    """True when one verdict Holds and the other Fails."""
    return (first.holds and second.fails) or (first.fails and second.holds)


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

names = st.sampled_from(["x", "y", "z"])
values = st.integers(-3, 3)

exprs = st.recursive(
    st.one_of(st.builds(Int, values), st.builds(Var, names)),
    lambda inner: st.one_of(
        st.builds(BinOp, st.sampled_from(ARITHMETIC_OPS + COMPARISON_OPS + ("and", "or")),
                  inner, inner),
        st.builds(Not, inner),
    ),
    max_leaves=6,
)

simple_stmts = st.one_of(
    st.just(Skip()),
    st.builds(Assign, names, exprs),
    st.builds(Input, names),
    st.builds(Output, exprs),
)


def _compound(inner):
    # the first statement of a sequence is never a sequence itself
    first = st.one_of(simple_stmts, st.builds(If, exprs, inner, inner), st.builds(While, exprs, inner))
    return st.one_of(first, st.builds(Seq, first, inner))


stmts = st.recursive(simple_stmts, _compound, max_leaves=8)

tails = st.one_of(
    st.just(bot),
    st.builds(lambda n: (lambda: rep(n)), values),
    st.builds(lambda n: (lambda: rep_fast(n)), values),
    st.builds(lambda n: (lambda: up(n)), values),
)


def _resumption_node(inner):
    return st.one_of(
        st.builds(lambda make: (lambda: Res.delay(make())), inner),
        st.builds(lambda v, make: (lambda: Res.out(v, make())), values, inner),
        st.builds(lambda makes: (lambda: Res.inp(lambda n: makes[n % len(makes)]())),
                  st.lists(inner, min_size=1, max_size=2)),
    )


# builders of random finite trees closed off with infinite tails or ret leaves
resumption_builders = st.recursive(
    st.one_of(tails, st.builds(lambda x: (lambda: Res.ret(State(x=x))), values)),
    _resumption_node,
    max_leaves=6,
)
