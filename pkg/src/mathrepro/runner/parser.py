"""Tokenizer and recursive-descent parser for the doctest mini-language.

Grammar (one input line)::

    line    := stmt (";" stmt)* [";"]
    stmt    := names "=" expr | expr
    names   := IDENT ("," IDENT)*
    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ["^" unary]                 # right associative
    atom    := INT | STRING | IDENT | call | "(" expr ")" | "[" [expr ("," expr)*] "]"
    call    := IDENT "(" [expr ("," expr)*] ")"

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from mathrepro.errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#.*)
  | (?P<int>[0-9]+)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^=,;()\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # int | string | ident | op | end
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            if src[pos] == '"':
                raise ParseError(f"unterminated string at column {pos + 1}")
            raise ParseError(f"unexpected character {src[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


# AST


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Str:
    value: str


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class ListExpr:
    items: tuple["Expr", ...]


Expr = Union[Int, Str, Name, Neg, BinOp, Call, ListExpr]


@dataclass(frozen=True)
class Assign:
    targets: tuple[str, ...]
    value: Expr


@dataclass(frozen=True)
class ExprStmt:
    value: Expr


Statement = Union[Assign, ExprStmt]


@dataclass(frozen=True)
class ParsedStatement:
    stmt: Statement
    silent: bool


def _unescape(lit: str) -> str:
    body = lit[1:-1]
    return re.sub(r"\\(.)", lambda m: {"n": "\n", "t": "\t"}.get(m.group(1), m.group(1)), body)


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected '{text}'")
        return self.advance()

    def error(self, message: str) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"{message}, found {found} at column {t.pos + 1}")

    def line(self) -> list[ParsedStatement]:
        out = []
        while self.tok.kind != "end":
            stmt = self.statement()
            silent = self.at(";")
            if silent:
                self.advance()
            elif self.tok.kind != "end":
                raise self.error("expected ';' or end of line")
            out.append(ParsedStatement(stmt, silent))
        return out

    def statement(self) -> Statement:
        # lookahead for `a, b, c =` or `a =`
        j = self.i
        names = []
        while self.tokens[j].kind == "ident":
            names.append(self.tokens[j].text)
            nxt = self.tokens[j + 1]
            if nxt.kind == "op" and nxt.text == ",":
                j += 2
                continue
            if nxt.kind == "op" and nxt.text == "=":
                self.i = j + 2
                return Assign(tuple(names), self.expr())
            break
        return ExprStmt(self.expr())

    def expr(self) -> Expr:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.at("*"):
            self.advance()
            left = BinOp("*", left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at("^"):
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def arguments(self, close: str) -> tuple[Expr, ...]:
        items = []
        if not self.at(close):
            items.append(self.expr())
            while self.at(","):
                self.advance()
                items.append(self.expr())
        self.expect(close)
        return tuple(items)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Int(int(t.text))
        if t.kind == "string":
            self.advance()
            return Str(_unescape(t.text))
        if t.kind == "ident":
            self.advance()
            if self.at("("):
                self.advance()
                return Call(t.text, self.arguments(")"))
            return Name(t.text)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if self.at("["):
            self.advance()
            return ListExpr(self.arguments("]"))
        raise self.error("expected an expression")


def parse_line(src: str) -> list[ParsedStatement]:
    return _Parser(src).line()
