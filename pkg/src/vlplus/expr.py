"""A small prefix language for states of V_L.

    expr   := op* state
    op     := 'a(' INT ')' | 'L(' INT ')' | '[' expr ']_' INT
    state  := '1' | 'E' INT? | 'F' INT? | 'J' | 'w'

Operators apply right to left: ``L(-2) a(-1) E`` is ``L(-2)(alpha(-1) E)``.
``[v]_n x`` is the mode ``v_n x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .fock import E_elem, F_elem, FockElement, Lattice, vacuum
from .vertex import J_elem, apply_alpha, mode_apply, omega, virasoro

OP_START = frozenset({"a(", "L(", "["})
STATE_START = frozenset({"1", "E", "F", "J", "w"})


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset[str]):
        self.offset = offset
        self.expected = expected
        exp = ", ".join(repr(e) for e in sorted(expected))
        super().__init__(f"{message} at byte {offset} (expected one of {exp})")


@dataclass(frozen=True)
class Alpha:
    n: int


@dataclass(frozen=True)
class Vir:
    n: int


@dataclass(frozen=True)
class Mode:
    inner: "Expr"
    n: int


@dataclass(frozen=True)
class State:
    name: str  # "1", "E", "F", "J" or "w"
    m: int | None = None


Op = Union[Alpha, Vir, Mode]


@dataclass(frozen=True)
class Expr:
    ops: tuple[Op, ...]
    state: State


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos: int | None = None) -> int:
        return len(self.text[: self.pos if pos is None else pos].encode("utf-8"))

    def fail(self, message: str, expected) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.offset(), frozenset(expected))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, lit: str):
        if not self.text.startswith(lit, self.pos):
            got = self.peek() or "end of input"
            raise self.fail(f"unexpected {got!r}", {lit})
        self.pos += len(lit)

    def integer(self, signed: bool = True) -> int:
        start = self.pos
        if signed and self.peek() in "+-" and self.peek():
            self.pos += 1
        digits = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.fail(f"unexpected {self.peek() or 'end of input'!r}", {"INT"})
        return int(self.text[start : self.pos])

    def expr(self, closing: str = "") -> Expr:
        ops: list[Op] = []
        while True:
            self.skip_ws()
            c = self.peek()
            if c == "a" or c == "L":
                self.pos += 1
                self.expect("(")
                n = self.integer()
                self.expect(")")
                ops.append(Alpha(n) if c == "a" else Vir(n))
            elif c == "[":
                self.pos += 1
                inner = self.expr(closing="]")
                self.expect("]_")
                ops.append(Mode(inner, self.integer()))
            elif c in STATE_START and c:
                self.pos += 1
                m = None
                if c in "EF" and self.peek().isdigit():
                    m = self.integer(signed=False)
                    if m < 1:
                        raise ExprSyntaxError("charge must be positive", self.offset(), frozenset({"INT"}))
                state = State(c, m)
                self.skip_ws()
                if self.peek() and self.peek() != closing:
                    raise self.fail(f"unexpected {self.peek()!r} after the state", {closing} if closing else {"end of input"})
                return Expr(tuple(ops), state)
            else:
                got = c or "end of input"
                raise self.fail(f"unexpected {got!r}", OP_START | STATE_START)


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        raise p.fail(f"trailing input {text[p.pos:]!r}", {"end of input"})
    return e


def print_expr(e: Expr) -> str:
    parts = []
    for op in e.ops:
        if isinstance(op, Alpha):
            parts.append(f"a({op.n})")
        elif isinstance(op, Vir):
            parts.append(f"L({op.n})")
        else:
            parts.append(f"[{print_expr(op.inner)}]_{op.n}")
    s = e.state
    parts.append(s.name + ("" if s.m is None else str(s.m)))
    return " ".join(parts)


def _state(lat: Lattice, s: State) -> FockElement:
    if s.name == "1":
        return vacuum()
    if s.name == "E":
        return E_elem(s.m or 1)
    if s.name == "F":
        return F_elem(s.m or 1)
    if s.name == "J":
        return J_elem(lat)
    return omega(lat)


def evaluate(e: Expr, lat: Lattice) -> FockElement:
    out = _state(lat, e.state)
    for op in reversed(e.ops):
        if isinstance(op, Alpha):
            out = apply_alpha(lat, op.n, out)
        elif isinstance(op, Vir):
            out = virasoro(lat, op.n, out)
        else:
            out = mode_apply(lat, evaluate(op.inner, lat), op.n, out)
    return out


def eval_text(text: str, lat: Lattice) -> FockElement:
    return evaluate(parse_expr(text), lat)
