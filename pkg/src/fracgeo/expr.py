"""Tiny expression language for user-supplied functions of one variable ``t``.

Grammar (EBNF)::

    expr   := term (("+"|"-") term)* ;
    term   := factor (("*"|"/") factor)* ;
    factor := ("-")? power ;
    power  := atom ("^" factor)? ;
    atom   := NUMBER | "t" | IDENT "(" expr ("," expr)? ")" | "(" expr ")" ;

``^`` binds tighter than unary minus and associates to the right; there is no
implicit multiplication.  The tokenizer is hand rolled so that syntax errors
carry exact byte offsets, and evaluation refuses to let NaN or infinity escape
silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

from . import special
from .errors import (
    ArityError,
    EvalDomainError,
    ExprSyntaxError,
    UnknownIdentifierError,
)

__all__ = [
    "BUILTIN_ARITY",
    "Binary",
    "Call",
    "Const",
    "ExprAst",
    "RealFunction",
    "Unary",
    "Var",
    "constant_function",
    "evaluate",
    "function_from_source",
    "identity_function",
    "parse",
    "power_function",
    "to_source",
]

#: Builtin callables and the number of arguments each accepts.
BUILTIN_ARITY = {
    "sin": 1,
    "cos": 1,
    "exp": 1,
    "log": 1,
    "sqrt": 1,
    "abs": 1,
    "pow": 2,
    "gamma": 1,
}


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    """The single permitted variable, ``t``."""


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "ExprAst"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["ExprAst", ...]


ExprAst = Union[Const, Var, Unary, Binary, Call]


# ---------------------------------------------------------------------------
# tokenizer

_OPERATORS = "+-*/^"


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER | IDENT | OP | LPAREN | RPAREN | COMMA | END
    text: str
    offset: int


def _tokenize(source: str) -> list[_Token]:
    # Character indexes equal byte offsets as long as the prefix is ASCII;
    # the first non-ASCII character is rejected immediately, so every offset
    # this function reports is a valid byte offset.
    tokens: list[_Token] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch in " \t":
            i += 1
            continue
        if not ch.isascii():
            offset = len(source[:i].encode("utf-8"))
            raise ExprSyntaxError(f"unexpected character {ch!r}", offset)
        if ch in _OPERATORS:
            tokens.append(_Token("OP", ch, i))
            i += 1
        elif ch == "(":
            tokens.append(_Token("LPAREN", ch, i))
            i += 1
        elif ch == ")":
            tokens.append(_Token("RPAREN", ch, i))
            i += 1
        elif ch == ",":
            tokens.append(_Token("COMMA", ch, i))
            i += 1
        elif ch.isdigit():
            start = i
            while i < n and source[i].isdigit():
                i += 1
            if i < n and source[i] == ".":
                i += 1
                while i < n and source[i].isdigit():
                    i += 1
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j >= n or not source[j].isdigit():
                    raise ExprSyntaxError(
                        "malformed exponent in numeric literal", j, expected=("digit",)
                    )
                i = j
                while i < n and source[i].isdigit():
                    i += 1
            tokens.append(_Token("NUMBER", source[start:i], start))
        elif ch.isalpha() or ch == "_":
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            tokens.append(_Token("IDENT", source[start:i], start))
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", n))
    return tokens


# ---------------------------------------------------------------------------
# parser

_ATOM_EXPECTED = ("NUMBER", "t", "function name", "(", "-")


def _describe(token: _Token) -> str:
    return repr(token.text) if token.text else "end of input"


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    def _peek(self) -> _Token:
        return self._tokens[self._pos]

    def _advance(self) -> _Token:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _expect(self, kind: str, what: str) -> _Token:
        token = self._peek()
        if token.kind != kind:
            raise ExprSyntaxError(
                f"expected {what}, found {_describe(token)}",
                token.offset,
                expected=(what,),
            )
        return self._advance()

    def parse(self) -> ExprAst:
        node = self.expr()
        trailing = self._peek()
        if trailing.kind != "END":
            raise ExprSyntaxError(
                f"unexpected trailing input {_describe(trailing)}",
                trailing.offset,
                expected=("end of input", "+", "-", "*", "/", "^"),
            )
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self._peek().kind == "OP" and self._peek().text in "+-":
            op = self._advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while self._peek().kind == "OP" and self._peek().text in "*/":
            op = self._advance().text
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> ExprAst:
        if self._peek().kind == "OP" and self._peek().text == "-":
            self._advance()
            return Unary("-", self.power())
        return self.power()

    def power(self) -> ExprAst:
        base = self.atom()
        if self._peek().kind == "OP" and self._peek().text == "^":
            self._advance()
            # right-associative: the exponent is a full factor, so "2^-3"
            # and "2^3^2" parse the way calculators read them
            return Binary("^", base, self.factor())
        return base

    def atom(self) -> ExprAst:
        token = self._peek()
        if token.kind == "NUMBER":
            self._advance()
            return Const(float(token.text))
        if token.kind == "IDENT":
            self._advance()
            if token.text == "t":
                return Var()
            if token.text not in BUILTIN_ARITY:
                raise UnknownIdentifierError(
                    f"unknown identifier {token.text!r}", token.offset
                )
            self._expect("LPAREN", "'('")
            args = [self.expr()]
            if self._peek().kind == "COMMA":
                self._advance()
                args.append(self.expr())
            self._expect("RPAREN", "')'")
            arity = BUILTIN_ARITY[token.text]
            if len(args) != arity:
                raise ArityError(
                    f"{token.text} takes {arity} argument(s), got {len(args)}",
                    token.offset,
                )
            return Call(token.text, tuple(args))
        if token.kind == "LPAREN":
            self._advance()
            node = self.expr()
            self._expect("RPAREN", "')'")
            return node
        raise ExprSyntaxError(
            f"expected an operand, found {_describe(token)}",
            token.offset,
            expected=_ATOM_EXPECTED,
        )


def parse(source: str) -> ExprAst:
    """Parse ``source`` into an immutable AST, or raise with a byte offset."""
    if not source:
        raise ExprSyntaxError("empty expression", 0, expected=_ATOM_EXPECTED)
    return _Parser(_tokenize(source)).parse()


# ---------------------------------------------------------------------------
# evaluation

def _pow(base: float, exponent: float) -> float:
    # math.pow already defines 0^0 = 1 and raises for negative bases with
    # fractional exponents instead of wandering into the complex plane.
    return math.pow(base, exponent)


_FUNCTIONS: dict[str, Callable[..., float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": math.fabs,
    "pow": _pow,
    "gamma": special.gamma,
}


def evaluate(ast: ExprAst, t: float) -> float:
    """Evaluate the tree at ``t``.

    Domain violations (log of a negative, division by zero, overflow) raise
    :class:`EvalDomainError` naming the offending subexpression; a NaN or
    infinity never comes back as a value.
    """
    if isinstance(ast, Const):
        return ast.value
    if isinstance(ast, Var):
        return t
    if isinstance(ast, Unary):
        return -evaluate(ast.operand, t)
    if isinstance(ast, Binary):
        left = evaluate(ast.left, t)
        right = evaluate(ast.right, t)
        try:
            if ast.op == "+":
                value = left + right
            elif ast.op == "-":
                value = left - right
            elif ast.op == "*":
                value = left * right
            elif ast.op == "/":
                value = left / right
            else:
                value = _pow(left, right)
        except (ValueError, OverflowError, ZeroDivisionError) as exc:
            raise EvalDomainError(str(exc), to_source(ast)) from exc
        if not math.isfinite(value):
            raise EvalDomainError("non-finite result", to_source(ast))
        return value
    # Call
    args = [evaluate(arg, t) for arg in ast.args]
    try:
        value = _FUNCTIONS[ast.name](*args)
    except (ValueError, OverflowError, ZeroDivisionError) as exc:
        raise EvalDomainError(str(exc), to_source(ast)) from exc
    if not math.isfinite(value):
        raise EvalDomainError("non-finite result", to_source(ast))
    return value


def to_source(ast: ExprAst) -> str:
    """Render a tree as fully parenthesized source that reparses identically."""
    if isinstance(ast, Const):
        if ast.value < 0.0 or math.copysign(1.0, ast.value) < 0.0:
            # parse() never produces negative constants; guard round-trips
            # for hand-built trees anyway
            return f"(-{repr(-ast.value)})"
        return repr(ast.value)
    if isinstance(ast, Var):
        return "t"
    if isinstance(ast, Unary):
        return f"(-{to_source(ast.operand)})"
    if isinstance(ast, Binary):
        return f"({to_source(ast.left)}{ast.op}{to_source(ast.right)})"
    return f"{ast.name}({','.join(to_source(arg) for arg in ast.args)})"


# ---------------------------------------------------------------------------
# callable wrapper

@dataclass(frozen=True)
class RealFunction:
    """Evaluable scalar function of one real variable.

    ``kind`` records the provenance ("expression" for parsed source,
    "builtin" for library-constructed functions); ``deriv`` is an optional
    analytic derivative used by arc-length when available.  Evaluation is
    pure: the same ``t`` always yields the identical value.
    """

    fn: Callable[[float], float]
    source: str
    kind: str = "builtin"
    deriv: Callable[[float], float] | None = field(default=None, compare=False)

    def __call__(self, t: float) -> float:
        return self.fn(t)


def function_from_source(source: str) -> RealFunction:
    """Parse ``source`` and wrap it as a :class:`RealFunction`."""
    ast = parse(source)

    def fn(t: float) -> float:
        return evaluate(ast, t)

    return RealFunction(fn=fn, source=source, kind="expression")


def identity_function() -> RealFunction:
    return RealFunction(fn=lambda t: t, source="t", kind="builtin", deriv=lambda t: 1.0)


def constant_function(c: float) -> RealFunction:
    value = float(c)
    return RealFunction(
        fn=lambda t: value, source=repr(value), kind="builtin", deriv=lambda t: 0.0
    )


def power_function(exponent: float) -> RealFunction:
    """``t^p`` with its analytic derivative; defined for ``t >= 0``."""
    p = float(exponent)

    def fn(t: float) -> float:
        return math.pow(t, p)

    def deriv(t: float) -> float:
        return p * math.pow(t, p - 1.0)

    return RealFunction(fn=fn, source=f"t^{p!r}", kind="builtin", deriv=deriv)
