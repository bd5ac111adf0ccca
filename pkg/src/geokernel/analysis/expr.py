"""Univariate expressions in x: AST, parser, printer and pointwise evaluation.

Grammar (tightest first): ``^`` (right associative, exponent may carry a
unary minus), unary ``-``, ``* /``, ``+ -``.  Functions: sin cos exp ln abs
sqrt.  A power with a non-integer exponent is rewritten to exp(b*ln(a)).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import mpmath

from ..errors import ExprSyntaxError

FUNCTIONS = ("sin", "cos", "exp", "ln", "abs", "sqrt")


class Expr:
    """Base class for AST nodes (all frozen dataclasses)."""

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Func(Expr):
    name: str
    arg: Expr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


X = Var()


def sin(e):
    return Func("sin", e)


def cos(e):
    return Func("cos", e)


def exp(e):
    return Func("exp", e)


def ln(e):
    return Func("ln", e)


# -- smart constructors (the normal form) ---------------------------------------------

def neg(a):
    return Const(-a.value) if isinstance(a, Const) else Neg(a)


def div(a, b):
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    return Div(a, b)


def power(base, exponent):
    if isinstance(exponent, Const) and exponent.value.denominator == 1:
        n = int(exponent.value)
        if isinstance(base, Const) and abs(n) <= 64 and (n >= 0 or base.value != 0):
            return Const(base.value ** n)
        return Pow(base, n)
    return Func("exp", Mul(exponent, Func("ln", base)))


def children(e):
    if isinstance(e, (Var, Const)):
        return ()
    if isinstance(e, (Neg, Func)):
        return (e.arg,)
    if isinstance(e, Pow):
        return (e.base,)
    return (e.left, e.right)


def size(e):
    return 1 + sum(size(c) for c in children(e))


def depth(e):
    return 1 + max((depth(c) for c in children(e)), default=0)


# -- parser ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if rest.strip() == "":
                out.append(("eof", "", len(text) + 1))
                return out
            col = pos + len(rest) - len(rest.lstrip()) + 1
            raise ExprSyntaxError(f"unexpected character {text[col - 1]!r}", column=col)
        kind = m.lastgroup
        out.append((kind if kind != "op" else m.group(kind), m.group(kind), m.start(kind) + 1))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, *kinds):
        tok = self.toks[self.i]
        if tok[0] not in kinds:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ExprSyntaxError(f"unexpected {what}", column=tok[2], expected=kinds)
        self.i += 1
        return tok

    def parse(self):
        e = self.sum()
        self.take("eof")
        return e

    def sum(self):
        e = self.product()
        while self.peek()[0] in "+-":
            op = self.take("+", "-")[0]
            r = self.product()
            e = Add(e, r) if op == "+" else Sub(e, r)
        return e

    def product(self):
        e = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take("*", "/")[0]
            r = self.unary()
            e = Mul(e, r) if op == "*" else div(e, r)
        return e

    def unary(self):
        if self.peek()[0] == "-":
            self.take("-")
            return neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            return power(base, self.unary())
        return base

    def atom(self):
        tok = self.take("num", "name", "(")
        if tok[0] == "num":
            return Const(Fraction(Decimal(tok[1])))
        if tok[0] == "(":
            e = self.sum()
            self.take(")")
            return e
        name = tok[1]
        if name == "x":
            return X
        if name not in FUNCTIONS:
            raise ExprSyntaxError(f"unknown name {name!r}", column=tok[2],
                                  expected=("x",) + FUNCTIONS)
        self.take("(")
        arg = self.sum()
        self.take(")")
        return Func(name, arg)


def parse_expr(text):
    """Parse text into a normalized :class:`Expr`."""
    return _Parser(text).parse()


# -- printer --------------------------------------------------------------------------

def _prec(e):
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, (Mul, Div)):
        return 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _wrap(e, need):
    s = print_expr(e)
    return f"({s})" if _prec(e) < need else s


def print_expr(e):
    """Text that parses back to the same tree."""
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Const):
        q = e.value
        if q.denominator == 1 and q >= 0:
            return str(q.numerator)
        return f"({q})"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, 5)}^{e.exponent}"
    if isinstance(e, Func):
        return f"{e.name}({print_expr(e.arg)})"
    op, p = {Add: ("+", 1), Sub: ("-", 1), Mul: ("*", 2), Div: ("/", 2)}[type(e)]
    return f"{_wrap(e.left, p)} {op} {_wrap(e.right, p + 1)}"


# -- pointwise evaluation -----------------------------------------------------------------

class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


class _Binary64:
    sin, cos, exp, log, sqrt = math.sin, math.cos, math.exp, math.log, math.sqrt

    @staticmethod
    def const(q):
        return float(q)


class _Multiprecision:
    sin, cos, exp, log, sqrt = mpmath.sin, mpmath.cos, mpmath.exp, mpmath.log, mpmath.sqrt

    @staticmethod
    def const(q):
        return mpmath.mpf(q.numerator) / q.denominator


def _point(e, x, lib=_Binary64):
    if isinstance(e, Var):
        return x
    if isinstance(e, Const):
        return lib.const(e.value)
    if isinstance(e, Neg):
        return -_point(e.arg, x, lib)
    if isinstance(e, Add):
        return _point(e.left, x, lib) + _point(e.right, x, lib)
    if isinstance(e, Sub):
        return _point(e.left, x, lib) - _point(e.right, x, lib)
    if isinstance(e, Mul):
        return _point(e.left, x, lib) * _point(e.right, x, lib)
    if isinstance(e, Div):
        d = _point(e.right, x, lib)
        if d == 0:
            raise ZeroDivisionError
        return _point(e.left, x, lib) / d
    if isinstance(e, Pow):
        b = _point(e.base, x, lib)
        if e.exponent < 0 and b == 0:
            raise ZeroDivisionError
        return b ** e.exponent
    a = _point(e.arg, x, lib)
    name = e.name
    if name == "sin":
        return lib.sin(a)
    if name == "cos":
        return lib.cos(a)
    if name == "exp":
        return lib.exp(a)
    if name == "ln":
        if a <= 0:
            raise ValueError("logarithm of a nonpositive number")
        return lib.log(a)
    if name == "abs":
        return abs(a)
    if a < 0:
        raise ValueError("square root of a negative number")
    return lib.sqrt(a)


def eval_point(e, x):
    """Binary64 value of e at x, or UNDEFINED outside the domain.

    Values too large for binary64 also come back UNDEFINED.
    """
    try:
        v = _point(e, float(x))
    except (ZeroDivisionError, ValueError, OverflowError):
        return UNDEFINED
    if isinstance(v, complex) or not math.isfinite(v):
        return UNDEFINED
    return v


def eval_point_mp(e, x, prec=256):
    """Value of e at x computed with ``prec`` bits, rounded to binary64.

    Immune to the cancellation that ruins binary64 evaluation of things
    like (x - sin(x))/x^3 at tiny x.  UNDEFINED outside the domain.
    """
    with mpmath.workprec(prec):
        try:
            v = _point(e, mpmath.mpf(x), _Multiprecision)
        except (ZeroDivisionError, ValueError, OverflowError):
            return UNDEFINED
        v = float(v)
    return v if math.isfinite(v) else UNDEFINED
