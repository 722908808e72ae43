"""Arithmetic expressions in the variable t: parser, evaluator, printer.

Grammar (recursive descent, whitespace ignored):

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right-associative
    atom    := NUMBER | 'pi' | 'e' | 't'
             | NAME '(' sum ')'           # sin cos exp log sqrt
             | '(' sum ')'

'^' binds tighter than unary minus, so "-2^2" means -(2^2).  Numeric
literals accept decimal and scientific notation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ExpressionError(ValueError):
    """Base class for expression parsing and evaluation failures."""


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position + 1})")
        self.position = position


class UnknownIdentifierError(ExpressionSyntaxError):
    pass


class EvaluationError(ExpressionError):
    def __init__(self, message: str, node: "Expression", t: float):
        super().__init__(f"{message} in '{node.to_text()}' at t = {t:g}")
        self.node = node
        self.t = t


class Expression:
    """Immutable expression tree node."""

    def evaluate(self, t: float) -> float:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def __call__(self, t: float) -> float:
        return self.evaluate(t)


@dataclass(frozen=True)
class Number(Expression):
    value: float

    def evaluate(self, t):
        return self.value

    def to_text(self):
        return repr(self.value)


@dataclass(frozen=True)
class TimeVar(Expression):
    def evaluate(self, t):
        return t

    def to_text(self):
        return "t"


@dataclass(frozen=True)
class Negate(Expression):
    operand: Expression

    def evaluate(self, t):
        return -self.operand.evaluate(t)

    def to_text(self):
        return f"(-{self.operand.to_text()})"


@dataclass(frozen=True)
class BinaryOp(Expression):
    op: str
    left: Expression
    right: Expression

    def evaluate(self, t):
        a = self.left.evaluate(t)
        b = self.right.evaluate(t)
        if self.op == "+":
            result = a + b
        elif self.op == "-":
            result = a - b
        elif self.op == "*":
            result = a * b
        elif self.op == "/":
            if b == 0.0:
                raise EvaluationError("division by zero", self, t)
            result = a / b
        elif self.op == "^":
            try:
                result = math.pow(a, b)
            except (ValueError, OverflowError) as exc:
                raise EvaluationError(f"invalid power ({exc})", self, t) from None
        else:
            raise AssertionError(f"unknown operator {self.op!r}")
        if not math.isfinite(result):
            raise EvaluationError("non-finite result", self, t)
        return result

    def to_text(self):
        return f"({self.left.to_text()}{self.op}{self.right.to_text()})"


_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
}

_CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class FunctionCall(Expression):
    name: str
    arg: Expression

    def evaluate(self, t):
        x = self.arg.evaluate(t)
        if self.name == "log" and x <= 0.0:
            raise EvaluationError("log of non-positive value", self, t)
        if self.name == "sqrt" and x < 0.0:
            raise EvaluationError("sqrt of negative value", self, t)
        try:
            result = _FUNCTIONS[self.name](x)
        except (ValueError, OverflowError) as exc:
            raise EvaluationError(f"function domain error ({exc})", self, t) from None
        if not math.isfinite(result):
            raise EvaluationError("non-finite result", self, t)
        return result

    def to_text(self):
        return f"{self.name}({self.arg.to_text()})"


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "name" | one of "+-*/^()" | "end"
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            tokens.append(_Token("number", text[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("name", text[start:i], start))
            continue
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ExpressionSyntaxError(f"expected {kind!r}, found {found}", tok.position)
        return self.advance()

    def parse_sum(self) -> Expression:
        node = self.parse_product()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            node = BinaryOp(op, node, self.parse_product())
        return node

    def parse_product(self) -> Expression:
        node = self.parse_unary()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            node = BinaryOp(op, node, self.parse_unary())
        return node

    def parse_unary(self) -> Expression:
        if self.peek().kind == "-":
            self.advance()
            return Negate(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Expression:
        base = self.parse_atom()
        if self.peek().kind == "^":
            self.advance()
            # Right-associative; the exponent may carry its own sign.
            return BinaryOp("^", base, self.parse_unary())
        return base

    def parse_atom(self) -> Expression:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Number(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text == "t":
                return TimeVar()
            if tok.text in _CONSTANTS:
                return Number(_CONSTANTS[tok.text])
            if tok.text in _FUNCTIONS:
                self.expect("(")
                arg = self.parse_sum()
                self.expect(")")
                return FunctionCall(tok.text, arg)
            raise UnknownIdentifierError(f"unknown identifier {tok.text!r}", tok.position)
        if tok.kind == "(":
            self.advance()
            node = self.parse_sum()
            self.expect(")")
            return node
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ExpressionSyntaxError(f"expected a value, found {found}", tok.position)


def parse(text: str) -> Expression:
    """Parse an expression string into an immutable tree."""
    parser = _Parser(_tokenize(text))
    node = parser.parse_sum()
    tail = parser.peek()
    if tail.kind != "end":
        raise ExpressionSyntaxError(f"unexpected trailing input {tail.text!r}", tail.position)
    return node


def evaluate(expr: Expression, t: float) -> float:
    return expr.evaluate(t)


ZERO = Number(0.0)
