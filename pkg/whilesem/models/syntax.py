"""
Abstract syntax of While with interactive input/output, program states and
pure expression evaluation.
"""

from dataclasses import dataclass
from typing import ClassVar, Dict, FrozenSet, Iterator, Mapping, Optional, Tuple, Union


ARITHMETIC_OPS = ("+", "-", "*")
COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")
BOOLEAN_OPS = ("and", "or")


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Int:
    """Integer literal; `true` and `false` parse to 1 and 0."""
    value: int


@dataclass(frozen=True)
class Var:
    """Variable reference."""
    name: str


@dataclass(frozen=True)
class BinOp:
    """
    Binary operator application.

    Attributes:
        op: One of the arithmetic, comparison or boolean operator spellings
        left: Left operand
        right: Right operand
    """
    op: str
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in ARITHMETIC_OPS + COMPARISON_OPS + BOOLEAN_OPS:
            raise ValueError(f"Unknown operator: {self.op}")


@dataclass(frozen=True)
class Not:
    """Boolean negation under the nonzero-is-true convention."""
    operand: "Expr"


Expr = Union[Int, Var, BinOp, Not]


# ---------------------------------------------------------------------------
# Statements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Seq:
    first: "Stmt"
    second: "Stmt"


@dataclass(frozen=True)
class Assign:
    var: str
    expr: Expr


@dataclass(frozen=True)
class If:
    cond: Expr
    then: "Stmt"
    orelse: "Stmt"


@dataclass(frozen=True)
class While:
    cond: Expr
    body: "Stmt"


@dataclass(frozen=True)
class Input:
    var: str


@dataclass(frozen=True)
class Output:
    expr: Expr


Stmt = Union[Skip, Seq, Assign, If, While, Input, Output]


def seq(*stmts: "Stmt") -> "Stmt":
    """Chain statements into a right-nested sequence (`skip` for none)."""
    if not stmts:
        return Skip()
    result = stmts[-1]
    for stmt in reversed(stmts[:-1]):
        result = Seq(stmt, result)
    return result


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

class State(Mapping[str, int]):
    """
    Finite map from variable names to integers.

    States are immutable and hashable. Reading an unbound variable through
    `lookup` yields 0; the Mapping interface itself only exposes the bindings
    that were made explicitly.
    """

    __slots__ = ("_items", "_hash")

    EMPTY: ClassVar["State"]

    def __init__(self, bindings: Optional[Mapping[str, int]] = None, **kwargs: int):
        merged: Dict[str, int] = dict(bindings or {})
        merged.update(kwargs)
        self._items: Tuple[Tuple[str, int], ...] = tuple(sorted(merged.items()))
        self._hash = hash(self._items)

    def __getitem__(self, name: str) -> int:
        for key, value in self._items:
            if key == name:
                return value
        raise KeyError(name)

    def __iter__(self) -> Iterator[str]:
        return (key for key, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, State):
            return self._items == other._items
        return NotImplemented

    def __repr__(self) -> str:
        return f"State({dict(self._items)!r})"

    def lookup(self, name: str) -> int:
        """Value of `name`, 0 when unbound."""
        return self.get(name, 0)

    def update(self, name: str, value: int) -> "State":
        """Return σ[name ↦ value]."""
        bindings = dict(self._items)
        bindings[name] = value
        return State(bindings)

    def project(self, names: FrozenSet[str]) -> Tuple[int, ...]:
        """Values of `names` in sorted order, unbound ones reading as 0."""
        return tuple(self.lookup(name) for name in sorted(names))

    def render(self) -> str:
        """Render as `{x=1, y=2}`."""
        return "{" + ", ".join(f"{key}={value}" for key, value in self._items) + "}"


State.EMPTY = State()


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _truth(value: bool) -> int:
    return 1 if value else 0


def eval_expr(expr: Expr, state: State) -> int:
    """
    Evaluate an expression in a state.

    Evaluation is total and pure: unbound variables read as 0, comparisons and
    boolean connectives yield 1 or 0, and integers have unbounded precision.
    """
    if isinstance(expr, Int):
        return expr.value
    if isinstance(expr, Var):
        return state.lookup(expr.name)
    if isinstance(expr, Not):
        return _truth(eval_expr(expr.operand, state) == 0)

    left = eval_expr(expr.left, state)
    # `and`/`or` do not short-circuit; evaluation has no effects to skip
    right = eval_expr(expr.right, state)
    op = expr.op
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "=":
        return _truth(left == right)
    if op == "<>":
        return _truth(left != right)
    if op == "<":
        return _truth(left < right)
    if op == "<=":
        return _truth(left <= right)
    if op == ">":
        return _truth(left > right)
    if op == ">=":
        return _truth(left >= right)
    if op == "and":
        return _truth(left != 0 and right != 0)
    return _truth(left != 0 or right != 0)


def is_true(expr: Expr, state: State) -> bool:
    """True iff the expression evaluates to a nonzero integer."""
    return eval_expr(expr, state) != 0


def is_false(expr: Expr, state: State) -> bool:
    """True iff the expression evaluates to zero."""
    return eval_expr(expr, state) == 0


def expr_variables(expr: Expr) -> FrozenSet[str]:
    if isinstance(expr, Var):
        return frozenset([expr.name])
    if isinstance(expr, BinOp):
        return expr_variables(expr.left) | expr_variables(expr.right)
    if isinstance(expr, Not):
        return expr_variables(expr.operand)
    return frozenset()


def variables(stmt: Stmt) -> FrozenSet[str]:
    """Every variable a statement reads or writes."""
    if isinstance(stmt, Seq):
        return variables(stmt.first) | variables(stmt.second)
    if isinstance(stmt, Assign):
        return frozenset([stmt.var]) | expr_variables(stmt.expr)
    if isinstance(stmt, If):
        return expr_variables(stmt.cond) | variables(stmt.then) | variables(stmt.orelse)
    if isinstance(stmt, While):
        return expr_variables(stmt.cond) | variables(stmt.body)
    if isinstance(stmt, Input):
        return frozenset([stmt.var])
    if isinstance(stmt, Output):
        return expr_variables(stmt.expr)
    return frozenset()
