"""
Concrete syntax of While: parsing with Lark and canonical pretty-printing.
"""

import logging
import re
from typing import Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from whilesem.models.syntax import (
    BinOp, Expr, If, Input, Int, Not, Output, Seq, Skip, Stmt, Var, While, Assign,
)

logger = logging.getLogger(__name__)

RESERVED_WORDS = frozenset([
    "skip", "if", "then", "else", "end", "while", "do",
    "input", "output", "not", "and", "or", "true", "false",
])

_KEYWORD_ALTERNATION = "|".join(sorted(RESERVED_WORDS))

GRAMMAR = r"""
start: stmt

?stmt: simple
     | simple ";" stmt                          -> seq

?simple: "skip"                                 -> skip
       | IDENT ":=" expr                        -> assign
       | "if" expr "then" stmt "else" stmt "end" -> if_
       | "while" expr "do" stmt "end"           -> while_
       | "input" IDENT                          -> input_
       | "output" expr                          -> output

?expr: disj

?disj: conj
     | disj "or" conj                           -> or_

?conj: neg
     | conj "and" neg                           -> and_

?neg: cmp
    | "not" neg                                 -> not_

?cmp: sum
    | sum CMP sum                               -> compare

?sum: prod
    | sum ADDOP prod                            -> arith

?prod: atom
     | prod "*" atom                            -> mul

?atom: INT                                      -> int_
     | "true"                                   -> true
     | "false"                                  -> false
     | IDENT                                    -> var
     | "(" expr ")"

CMP: "<>" | "<=" | ">=" | "=" | "<" | ">"
ADDOP: "+" | "-"
INT: /-?[0-9]+/
IDENT: /(?!(""" + _KEYWORD_ALTERNATION + r""")\b)[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


class ParseError(Exception):
    """Exception raised for malformed While programs."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


@v_args(inline=True)
class _AstBuilder(Transformer):
    """Turn Lark parse trees into `whilesem.models.syntax` values."""

    def start(self, stmt):
        return stmt

    def seq(self, first, second):
        return Seq(first, second)

    def skip(self):
        return Skip()

    def assign(self, name, expr):
        return Assign(str(name), expr)

    def if_(self, cond, then, orelse):
        return If(cond, then, orelse)

    def while_(self, cond, body):
        return While(cond, body)

    def input_(self, name):
        return Input(str(name))

    def output(self, expr):
        return Output(expr)

    def or_(self, left, right):
        return BinOp("or", left, right)

    def and_(self, left, right):
        return BinOp("and", left, right)

    def not_(self, operand):
        return Not(operand)

    def compare(self, left, op, right):
        return BinOp(str(op), left, right)

    def arith(self, left, op, right):
        return BinOp(str(op), left, right)

    def mul(self, left, right):
        return BinOp("*", left, right)

    def int_(self, token):
        return Int(int(token))

    def true(self):
        return Int(1)

    def false(self):
        return Int(0)

    def var(self, name):
        return Var(str(name))


_parser = Lark(GRAMMAR, parser="lalr", maybe_placeholders=False)

_RESERVED_ASSIGNMENT = re.compile(r"\b(" + _KEYWORD_ALTERNATION + r")\s*:=")


def _check_reserved_assignment(text: str):
    # `if := 1` otherwise reports the `:=` rather than the keyword
    for number, line in enumerate(text.splitlines(), start=1):
        match = _RESERVED_ASSIGNMENT.search(line.split("#", 1)[0])
        if match:
            raise ParseError(f"Reserved word '{match.group(1)}' used as variable",
                             number, match.start(1) + 1)


def parse_program(text: str) -> Stmt:
    """
    Parse the concrete syntax of a While program.

    Args:
        text: Program source

    Returns:
        The statement's abstract syntax tree

    Raises:
        ParseError: On a syntax error or a reserved word used as a variable
    """
    _check_reserved_assignment(text)
    try:
        tree = _parser.parse(text)
    except UnexpectedToken as e:
        token: Token = e.token
        if token.value in RESERVED_WORDS and "IDENT" in e.expected:
            raise ParseError(f"Reserved word '{token.value}' used as variable",
                             e.line, e.column) from None
        raise ParseError(f"Unexpected token '{token.value}'", e.line, e.column) from None
    except UnexpectedCharacters as e:
        raise ParseError(f"Unexpected character '{text[e.pos_in_stream]}'",
                         e.line, e.column) from None
    except UnexpectedEOF as e:
        raise ParseError("Unexpected end of input", e.line, e.column) from None
    except UnexpectedInput as e:
        raise ParseError(str(e), e.line, e.column) from None
    return _AstBuilder().transform(tree)


def parse_file(path: str) -> Stmt:
    """Read a UTF-8 `.whl` file and parse it."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    logger.debug(f"Parsing {path}")
    return parse_program(text)


# ---------------------------------------------------------------------------
# Pretty printing
# ---------------------------------------------------------------------------

def _operand(expr: Expr) -> str:
    if isinstance(expr, (BinOp, Not)):
        return f"({pretty_expr(expr)})"
    return pretty_expr(expr)


def pretty_expr(expr: Expr) -> str:
    if isinstance(expr, Int):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Not):
        return f"not {_operand(expr.operand)}"
    return f"{_operand(expr.left)} {expr.op} {_operand(expr.right)}"


def pretty_stmt(stmt: Stmt, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(stmt, Seq):
        # the left part of a sequence is never itself printed as a sequence
        first = stmt.first
        if isinstance(first, Seq):
            raise ValueError("Left-nested sequence has no concrete syntax")
        return f"{pretty_stmt(first, indent)};\n{pretty_stmt(stmt.second, indent)}"
    if isinstance(stmt, Skip):
        return f"{pad}skip"
    if isinstance(stmt, Assign):
        return f"{pad}{stmt.var} := {pretty_expr(stmt.expr)}"
    if isinstance(stmt, Input):
        return f"{pad}input {stmt.var}"
    if isinstance(stmt, Output):
        return f"{pad}output {pretty_expr(stmt.expr)}"
    if isinstance(stmt, If):
        return (f"{pad}if {pretty_expr(stmt.cond)} then\n"
                f"{pretty_stmt(stmt.then, indent + 1)}\n"
                f"{pad}else\n"
                f"{pretty_stmt(stmt.orelse, indent + 1)}\n"
                f"{pad}end")
    return (f"{pad}while {pretty_expr(stmt.cond)} do\n"
            f"{pretty_stmt(stmt.body, indent + 1)}\n"
            f"{pad}end")


def pretty(node: Union[Stmt, Expr]) -> str:
    """Canonical concrete syntax for a statement or expression."""
    if isinstance(node, (Int, Var, BinOp, Not)):
        return pretty_expr(node)
    return pretty_stmt(node)
