"""One-variable function parsing and truncated-Taylor (jet) evaluation.

Grammar (this is also the CLI's function-input format)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?        # exponent must be constant
    atom   := NUMBER | 'x' | NAME '(' expr ')' | '(' expr ')'

Functions: ``exp``, ``log``, ``sqrt``, ``sinh``, ``cosh``, ``abs``.  ``^`` is
right-associative and binds tighter than unary minus.  Implicit
multiplication ("2x") is not recognized.

Evaluation is forward Taylor-mode: :func:`eval_jet` returns the value and the
first three derivatives at a point, so a single parsed function supplies f,
f' and f'' to every bound check.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .core import DomainError


class ParseError(ValueError):
    """Malformed function text; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class Expr:
    """Base class for AST nodes.  Nodes are callable as plain float functions."""

    def __call__(self, x: float) -> float:
        return eval_jet(self, x).v0


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # one of + - * /
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: float


@dataclass(frozen=True)
class Call(Expr):
    name: str
    arg: Expr


_FUNCTIONS = ("exp", "log", "sqrt", "sinh", "cosh", "abs")

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num | name | op | end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unrecognized character {text[pos]!r}", pos)
        kind = m.lastgroup or "op"
        tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return _contains_var(e.operand)
    if isinstance(e, BinOp):
        return _contains_var(e.left) or _contains_var(e.right)
    if isinstance(e, Pow):
        return _contains_var(e.base)
    if isinstance(e, Call):
        return _contains_var(e.arg)
    return False


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}, found {tok.text!r}" if tok.kind != "end" else f"expected {op!r}, found end of input", tok.offset)
        self.advance()

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            caret = self.advance()
            exponent = self.unary()
            if _contains_var(exponent):
                raise ParseError("exponent must be constant (no x in exponent)", caret.offset)
            try:
                value = eval_jet(exponent, 0.0).v0
            except DomainError as exc:
                raise ParseError(f"invalid constant exponent: {exc}", caret.offset) from None
            node = Pow(node, value)
        return node

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text == "x":
                return Var()
            if tok.text in _FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(tok.text, arg)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.offset)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.offset)
        raise ParseError(f"unexpected token {tok.text!r}", tok.offset)


def parse(text: str) -> Expr:
    """Parse function text into an AST; raises :class:`ParseError` with a byte offset."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(text)
    tree = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(f"unexpected token {trailing.text!r}", trailing.offset)
    return tree


def to_text(e: Expr) -> str:
    """Render an AST back to parseable text (fully parenthesized)."""
    if isinstance(e, Const):
        v = e.value
        return str(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Neg):
        return f"-({to_text(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Pow):
        exp = e.exponent
        exp_text = str(int(exp)) if float(exp).is_integer() and abs(exp) < 1e15 else repr(exp)
        return f"({to_text(e.base)}^{exp_text})"
    if isinstance(e, Call):
        return f"{e.name}({to_text(e.arg)})"
    raise TypeError(f"not an Expr node: {type(e).__name__}")


@dataclass(frozen=True)
class Jet3:
    """Value and first three derivatives of a function at a point."""

    v0: float
    v1: float
    v2: float
    v3: float

    def __add__(self, other: "Jet3") -> "Jet3":
        return Jet3(self.v0 + other.v0, self.v1 + other.v1, self.v2 + other.v2, self.v3 + other.v3)

    def __sub__(self, other: "Jet3") -> "Jet3":
        return Jet3(self.v0 - other.v0, self.v1 - other.v1, self.v2 - other.v2, self.v3 - other.v3)

    def __neg__(self) -> "Jet3":
        return Jet3(-self.v0, -self.v1, -self.v2, -self.v3)

    def __mul__(self, other: "Jet3") -> "Jet3":
        # Leibniz rule through third order
        return Jet3(
            self.v0 * other.v0,
            self.v1 * other.v0 + self.v0 * other.v1,
            self.v2 * other.v0 + 2.0 * self.v1 * other.v1 + self.v0 * other.v2,
            self.v3 * other.v0
            + 3.0 * self.v2 * other.v1
            + 3.0 * self.v1 * other.v2
            + self.v0 * other.v3,
        )

    def scaled(self, c: float) -> "Jet3":
        return Jet3(c * self.v0, c * self.v1, c * self.v2, c * self.v3)


def _compose(u0: float, u1: float, u2: float, u3: float, g: Jet3) -> Jet3:
    """Chain rule to third order: u(g(x)) given derivatives of u at g.v0."""
    g1, g2, g3 = g.v1, g.v2, g.v3
    return Jet3(
        u0,
        u1 * g1,
        u2 * g1 * g1 + u1 * g2,
        u3 * g1 * g1 * g1 + 3.0 * u2 * g1 * g2 + u1 * g3,
    )


def _recip(g: Jet3, x: float) -> Jet3:
    if g.v0 == 0.0:
        raise DomainError(f"division by zero at x = {x!r}")
    v = 1.0 / g.v0
    return _compose(v, -v * v, 2.0 * v**3, -6.0 * v**4, g)


def _int_power(g: Jet3, n: int, x: float) -> Jet3:
    # square-and-multiply keeps integer powers exact without a sign/domain split
    if n == 0:
        return Jet3(1.0, 0.0, 0.0, 0.0)
    if n < 0:
        return _recip(_int_power(g, -n, x), x)
    result = Jet3(1.0, 0.0, 0.0, 0.0)
    base = g
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def _pow_jet(g: Jet3, r: float, x: float) -> Jet3:
    if float(r).is_integer() and abs(r) <= 2**31:
        return _int_power(g, int(r), x)
    if g.v0 <= 0.0:
        raise DomainError(
            f"x^{r!r} needs a positive base for non-integer exponent; base = {g.v0!r} at x = {x!r}"
        )
    u0 = g.v0**r
    u1 = r * g.v0 ** (r - 1.0)
    u2 = r * (r - 1.0) * g.v0 ** (r - 2.0)
    u3 = r * (r - 1.0) * (r - 2.0) * g.v0 ** (r - 3.0)
    return _compose(u0, u1, u2, u3, g)


def _call_jet(name: str, g: Jet3, x: float) -> Jet3:
    v = g.v0
    if name == "exp":
        try:
            ev = math.exp(v)
        except OverflowError:
            raise DomainError(f"exp overflow at x = {x!r} (arg = {v!r})") from None
        return _compose(ev, ev, ev, ev, g)
    if name == "log":
        if v <= 0.0:
            raise DomainError(f"log of nonpositive argument at x = {x!r} (arg = {v!r})")
        return _compose(math.log(v), 1.0 / v, -1.0 / v**2, 2.0 / v**3, g)
    if name == "sqrt":
        if v <= 0.0:
            raise DomainError(f"sqrt of nonpositive argument at x = {x!r} (arg = {v!r})")
        s = math.sqrt(v)
        return _compose(s, 0.5 / s, -0.25 / (v * s), 0.375 / (v * v * s), g)
    if name == "sinh":
        try:
            sh, ch = math.sinh(v), math.cosh(v)
        except OverflowError:
            raise DomainError(f"sinh overflow at x = {x!r} (arg = {v!r})") from None
        return _compose(sh, ch, sh, ch, g)
    if name == "cosh":
        try:
            sh, ch = math.sinh(v), math.cosh(v)
        except OverflowError:
            raise DomainError(f"cosh overflow at x = {x!r} (arg = {v!r})") from None
        return _compose(ch, sh, ch, sh, g)
    if name == "abs":
        if v == 0.0:
            raise DomainError(f"abs is not differentiable at 0 (x = {x!r})")
        return g if v > 0.0 else -g
    raise ValueError(f"unknown function {name!r}")


def eval_jet(e: Expr, x: float) -> Jet3:
    """Evaluate ``e`` and its first three derivatives at ``x``.

    Raises :class:`~hhaudit.core.DomainError` naming the operator and the
    point whenever the evaluation leaves a function's domain.
    """
    if isinstance(e, Const):
        return Jet3(e.value, 0.0, 0.0, 0.0)
    if isinstance(e, Var):
        return Jet3(x, 1.0, 0.0, 0.0)
    if isinstance(e, Neg):
        return -eval_jet(e.operand, x)
    if isinstance(e, BinOp):
        left = eval_jet(e.left, x)
        right = eval_jet(e.right, x)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if e.op == "/":
            return left * _recip(right, x)
        raise ValueError(f"unknown operator {e.op!r}")
    if isinstance(e, Pow):
        return _pow_jet(eval_jet(e.base, x), e.exponent, x)
    if isinstance(e, Call):
        return _call_jet(e.name, eval_jet(e.arg, x), x)
    raise TypeError(f"not an Expr node: {type(e).__name__}")


def evaluate(e: Expr, x: float) -> float:
    """Plain value of ``e`` at ``x`` (the jet's zeroth component)."""
    return eval_jet(e, x).v0
