"""A small expression language in one variable ``x``.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' ['-'] integer)?
    atom   := number | 'x' | 'pi' | 'e' | name '(' expr [',' expr] ')' | '(' expr ')'

Functions: exp, log, sin, cos, abs, sqrt (one argument), max (two) and the
right-continuous Heaviside ``step(u)`` (1 for ``u >= 0``, else 0), which
derivatives of ``abs``/``max`` produce. Unary minus binds looser than ``^``,
so ``-x^2`` is ``-(x^2)``.

Derivatives at kinks follow the right-derivative convention; any tree that
contains ``abs``, ``max`` or ``step`` reports ``kinked = True``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError


class ExprSyntaxError(DomainError):
    def __init__(self, message: str, offset: int, expected: frozenset[str]):
        super().__init__(message)
        self.offset = offset
        self.expected = expected


class ExprDomainError(DomainError, ArithmeticError):
    """Evaluation left the domain of an operation (log of 0, division by 0, ...)."""

    def __init__(self, message: str, where: str):
        super().__init__(f"{message} in {where}")
        self.where = where


def _log(u):
    if u <= 0.0:
        raise ValueError("log of nonpositive value")
    return math.log(u)


def _sqrt(u):
    if u < 0.0:
        raise ValueError("sqrt of negative value")
    return math.sqrt(u)


def _step(u):
    return 1.0 if u >= 0.0 else 0.0


UNARY = {
    "exp": math.exp,
    "log": _log,
    "sin": math.sin,
    "cos": math.cos,
    "abs": abs,
    "sqrt": _sqrt,
    "step": _step,
}
BINARY = {"max": max}
CONSTANTS = {"pi": math.pi, "e": math.e}
KINKED = {"abs", "max", "step"}


class Expr:
    """Immutable expression node; call it with a float to evaluate."""

    def __call__(self, x: float) -> float:
        return self.evaluate(float(x))

    def evaluate(self, x: float) -> float:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def children(self) -> tuple["Expr", ...]:
        return ()

    @cached_property
    def kinked(self) -> bool:
        return any(c.kinked for c in self.children())

    def __str__(self):
        return self.to_text()

    def derivative(self, order: int = 1) -> "Expr":
        return differentiate(self, order)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: float

    def evaluate(self, x):
        return self.value

    def to_text(self):
        r = repr(float(self.value))
        return f"({r})" if self.value < 0 or r.startswith("-") else r


@dataclass(frozen=True, eq=True)
class Var(Expr):
    def evaluate(self, x):
        return x

    def to_text(self):
        return "x"


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr

    def evaluate(self, x):
        return -self.arg.evaluate(x)

    def to_text(self):
        return f"(-{self.arg.to_text()})"

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, x):
        a = self.left.evaluate(x)
        b = self.right.evaluate(x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0.0:
            raise ExprDomainError("division by zero", self.to_text())
        return a / b

    def to_text(self):
        return f"({self.left.to_text()} {self.op} {self.right.to_text()})"

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def evaluate(self, x):
        b = self.base.evaluate(x)
        if self.exponent < 0 and b == 0.0:
            raise ExprDomainError("zero to a negative power", self.to_text())
        return b**self.exponent

    def to_text(self):
        return f"({self.base.to_text()}^{self.exponent})"

    def children(self):
        return (self.base,)


@dataclass(frozen=True, eq=True)
class Call(Expr):
    name: str
    args: tuple[Expr, ...]

    def evaluate(self, x):
        vals = [a.evaluate(x) for a in self.args]
        try:
            if len(vals) == 1:
                return UNARY[self.name](vals[0])
            return BINARY[self.name](*vals)
        except (ValueError, OverflowError) as exc:
            raise ExprDomainError(str(exc), self.to_text()) from None

    def to_text(self):
        return f"{self.name}({', '.join(a.to_text() for a in self.args)})"

    def children(self):
        return self.args

    @cached_property
    def kinked(self) -> bool:
        return self.name in KINKED or any(a.kinked for a in self.args)


ZERO = Const(0.0)
ONE = Const(1.0)
X = Var()


# Smart constructors: constant folding plus the 0/1 identities.

def _is(e: Expr, v: float) -> bool:
    return isinstance(e, Const) and e.value == v


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    return BinOp("+", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return neg(b)
    return BinOp("-", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is(a, 0.0) or _is(b, 0.0):
        return ZERO
    if _is(a, 1.0):
        return b
    if _is(b, 1.0):
        return a
    return BinOp("*", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0.0:
        return Const(a.value / b.value)
    if _is(a, 0.0) and not _is(b, 0.0):
        return ZERO
    if _is(b, 1.0):
        return a
    return BinOp("/", a, b)


def power(a: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return a
    if isinstance(a, Const) and not (a.value == 0.0 and n < 0):
        return Const(a.value**n)
    return Pow(a, n)


def call(name: str, *args: Expr) -> Expr:
    if all(isinstance(a, Const) for a in args):
        try:
            return Const(Call(name, args).evaluate(0.0))
        except ExprDomainError:
            pass
    return Call(name, tuple(args))


# --- parsing -------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),−]))"
)


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(source) and source[pos].isspace():
                pos += 1
            if pos >= len(source):
                break
            m = _TOKEN.match(source, pos)
            if not m or m.end() == pos:
                self._fail(pos, {"number", "name", "operator"}, repr(source[pos]))
            kind = m.lastgroup
            text = m.group(kind)
            if text == "−":
                text = "-"
            self.tokens.append((kind, text, m.start(kind)))
            pos = m.end()
        self.i = 0

    def _fail(self, pos: int, expected, found: str):
        offset = len(self.source[:pos].encode("utf-8"))
        exp = frozenset(expected)
        raise ExprSyntaxError(
            f"syntax error at byte {offset}: expected {' or '.join(sorted(exp))}, found {found}",
            offset,
            exp,
        )

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.source))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, t, pos = self.peek()
        if t != text or kind != "op":
            self._fail(pos, {repr(text)}, repr(t) if kind != "end" else "end of input")
        self.i += 1

    def parse(self) -> Expr:
        e = self.expr()
        kind, t, pos = self.peek()
        if kind != "end":
            self._fail(pos, {"end of input", "operator"}, repr(t))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            e = add(e, rhs) if op == "+" else sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.factor()
            e = mul(e, rhs) if op == "*" else div(e, rhs)
        return e

    def factor(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, t, pos = self.peek()
            if kind != "num" or not t.isdigit():
                self._fail(pos, {"integer exponent"}, repr(t) if kind != "end" else "end of input")
            self.take()
            return power(base, sign * int(t))
        return base

    def atom(self) -> Expr:
        kind, t, pos = self.take()
        if kind == "num":
            return Const(float(t))
        if kind == "name":
            if t == "x":
                return X
            if t in CONSTANTS:
                return Const(CONSTANTS[t])
            if t in UNARY or t in BINARY:
                self.expect("(")
                args = [self.expr()]
                if t in BINARY:
                    self.expect(",")
                    args.append(self.expr())
                self.expect(")")
                return call(t, *args)
            self._fail(pos, {"x", "pi", "e", "function name"}, repr(t))
        if kind == "op" and t == "(":
            e = self.expr()
            self.expect(")")
            return e
        self._fail(pos, {"number", "x", "function", "'('", "'-'"}, repr(t) if kind != "end" else "end of input")


def parse(source: str) -> Expr:
    """Parse ``source``; raises :class:`ExprSyntaxError` with a byte offset."""
    return _Parser(source).parse()


def evaluate(e: Expr, x: float) -> float:
    return e.evaluate(float(x))


# --- differentiation -----------------------------------------------------

def _d(e: Expr) -> Expr:
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Neg):
        return neg(_d(e.arg))
    if isinstance(e, BinOp):
        u, v = e.left, e.right
        du, dv = _d(u), _d(v)
        if e.op == "+":
            return add(du, dv)
        if e.op == "-":
            return sub(du, dv)
        if e.op == "*":
            return add(mul(du, v), mul(u, dv))
        return div(sub(mul(du, v), mul(u, dv)), power(v, 2))
    if isinstance(e, Pow):
        n = e.exponent
        return mul(mul(Const(float(n)), power(e.base, n - 1)), _d(e.base))
    if isinstance(e, Call):
        if e.name == "max":
            return _d_max(*e.args)
        u = e.args[0]
        du = _d(u)
        if e.name == "exp":
            return mul(e, du)
        if e.name == "log":
            return div(du, u)
        if e.name == "sin":
            return mul(call("cos", u), du)
        if e.name == "cos":
            return neg(mul(call("sin", u), du))
        if e.name == "sqrt":
            return div(du, mul(Const(2.0), e))
        if e.name == "abs":
            return _d_max(u, neg(u))
        if e.name == "step":
            return ZERO
    raise TypeError(f"cannot differentiate {e!r}")


def _d_max(u: Expr, v: Expr) -> Expr:
    # right derivative: the active branch off a tie, max(u', v') on a tie
    du, dv = _d(u), _d(v)
    s_u = call("step", sub(u, v))
    s_v = call("step", sub(v, u))
    tie = mul(s_u, s_v)
    correction = mul(tie, sub(add(du, dv), call("max", du, dv)))
    return sub(add(mul(s_u, du), mul(s_v, dv)), correction)


def differentiate(e: Expr, order: int = 1) -> Expr:
    """Symbolic derivative of ``e`` taken ``order`` times."""
    if order < 1:
        raise DomainError(f"derivative order must be >= 1, got {order}")
    for _ in range(order):
        e = _d(e)
    return e
