"""WHERE-clause filter language over session columns.

Grammar, lowest precedence first::

    expr := or
    or   := and (OR and)*
    and  := not (AND not)*
    not  := [NOT] cmp
    cmp  := column op number | '(' expr ')'

Keywords are case-insensitive, identifiers may be double-quoted to include
spaces, ops are < <= > >= = !=, and literals are plain numbers. Columns are
dataset features plus the pseudo-columns ``pred`` and ``label``; a feature
named like a pseudo-column wins. Equality on floats is exact, so range
predicates are the better tool for continuous columns.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .model import QueryProvenance, Selection, Session


class FilterSyntaxError(ValueError):
    """Filter text failed to parse at ``position`` (character offset)."""

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"expected {expected} at position {position}")


class UnknownColumnError(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown column {name!r}")


@dataclass(frozen=True)
class Comparison:
    column: str
    op: str  # < <= > >= = !=
    value: float


@dataclass(frozen=True)
class And:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclass(frozen=True)
class Or:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclass(frozen=True)
class Not:
    operand: "FilterExpr"


FilterExpr = Union[Comparison, And, Or, Not]

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPS = ("<=", ">=", "!=", "<", ">", "=")
_KEYWORDS = {"AND", "OR", "NOT"}


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens: list[tuple[str, object, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            tokens.append(("LPAREN", "(", i))
            i += 1
            continue
        if ch == ")":
            tokens.append(("RPAREN", ")", i))
            i += 1
            continue
        if ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise FilterSyntaxError(i, 'a closing "')
            tokens.append(("IDENT", text[i + 1 : end], i))
            i = end + 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(("NUMBER", float(m.group()), i))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            if word.upper() in _KEYWORDS:
                tokens.append((word.upper(), word, i))
            else:
                tokens.append(("IDENT", word, i))
            i = m.end()
            continue
        for op in _OPS:
            if text.startswith(op, i):
                tokens.append(("OP", op, i))
                i += len(op)
                break
        else:
            raise FilterSyntaxError(i, "a column, number, operator, or parenthesis")
    tokens.append(("EOF", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, object, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, object, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> tuple[str, object, int]:
        tok = self.peek()
        if tok[0] != kind:
            raise FilterSyntaxError(tok[2], expected)
        return self.take()

    def parse(self) -> FilterExpr:
        expr = self.parse_or()
        tok = self.peek()
        if tok[0] != "EOF":
            raise FilterSyntaxError(tok[2], "AND, OR, or end of input")
        return expr

    def parse_or(self) -> FilterExpr:
        expr = self.parse_and()
        while self.peek()[0] == "OR":
            self.take()
            expr = Or(expr, self.parse_and())
        return expr

    def parse_and(self) -> FilterExpr:
        expr = self.parse_not()
        while self.peek()[0] == "AND":
            self.take()
            expr = And(expr, self.parse_not())
        return expr

    def parse_not(self) -> FilterExpr:
        if self.peek()[0] == "NOT":
            self.take()
            return Not(self.parse_cmp())
        return self.parse_cmp()

    def parse_cmp(self) -> FilterExpr:
        tok = self.peek()
        if tok[0] == "LPAREN":
            self.take()
            expr = self.parse_or()
            self.expect("RPAREN", "a closing parenthesis")
            return expr
        if tok[0] != "IDENT":
            raise FilterSyntaxError(tok[2], "a column name or parenthesized expression")
        _, column, _ = self.take()
        op_tok = self.expect("OP", "a comparison operator")
        num_tok = self.expect("NUMBER", "a number")
        return Comparison(column=str(column), op=str(op_tok[1]), value=float(num_tok[1]))


def parse_filter(text: str) -> FilterExpr:
    return _Parser(_tokenize(text)).parse()


def _format_ident(name: str) -> str:
    if _IDENT.fullmatch(name) and name.upper() not in _KEYWORDS:
        return name
    return f'"{name}"'


def to_text(expr: FilterExpr) -> str:
    """Canonical text form; reparsing it yields an identical tree."""
    if isinstance(expr, Comparison):
        return f"{_format_ident(expr.column)} {expr.op} {expr.value!r}"
    if isinstance(expr, Not):
        return f"NOT ({to_text(expr.operand)})"
    if isinstance(expr, And):
        return f"({to_text(expr.left)}) AND ({to_text(expr.right)})"
    if isinstance(expr, Or):
        return f"({to_text(expr.left)}) OR ({to_text(expr.right)})"
    raise TypeError(f"not a filter expression: {expr!r}")


_CMP = {
    "<": np.less,
    "<=": np.less_equal,
    ">": np.greater,
    ">=": np.greater_equal,
    "=": np.equal,
    "!=": np.not_equal,
}


def _eval_mask(expr: FilterExpr, session: Session) -> np.ndarray:
    if isinstance(expr, Comparison):
        try:
            column = session.column_values(expr.column)
        except KeyError:
            raise UnknownColumnError(expr.column) from None
        return _CMP[expr.op](column, expr.value)
    if isinstance(expr, And):
        return _eval_mask(expr.left, session) & _eval_mask(expr.right, session)
    if isinstance(expr, Or):
        return _eval_mask(expr.left, session) | _eval_mask(expr.right, session)
    if isinstance(expr, Not):
        return ~_eval_mask(expr.operand, session)
    raise TypeError(f"not a filter expression: {expr!r}")


def eval_filter(expr: FilterExpr, session: Session, text: str | None = None) -> Selection:
    """Row-wise evaluation to a Selection tagged with the query text."""
    mask = _eval_mask(expr, session)
    return Selection.from_indices(
        np.nonzero(mask)[0], provenance=QueryProvenance(text if text is not None else to_text(expr))
    )


def run_query(text: str, session: Session) -> Selection:
    return eval_filter(parse_filter(text), session, text=text)
