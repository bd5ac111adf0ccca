"""Taylor models: interval-coefficient polynomials with a rigorous remainder.

A model of degree n about c on the domain D promises, for every x in D,

    f(x) ∈ Σ_k C_k h^k + h^(n+1) · R,      h = x - c.

Keeping the remainder with its h^(n+1) factor (rather than as one interval)
lets a common power of h be divided out exactly, which is what the quotient
rule for limits needs.  The usual additive remainder is ``H^(n+1) · R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DenominatorMayVanish, DomainViolation, UnsupportedNode
from ..numeric.interval import (
    Interval,
    interval_add,
    interval_cos,
    interval_div,
    interval_exp,
    interval_ln,
    interval_mul,
    interval_pow,
    interval_sin,
    interval_sub,
)
from .enclose import eval_interval
from .expr import Add, Const, Div, Func, Mul, Neg, Pow, Sub, Var

ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


def _horner(coeffs, h):
    acc = ZERO
    for c in reversed(coeffs):
        acc = interval_add(interval_mul(acc, h), c)
    return acc


def _power_sum(coeffs, H):
    """Range bound Σ C_k H^k; even powers of a centered H stay nonnegative."""
    acc = coeffs[0]
    for k, c in enumerate(coeffs[1:], start=1):
        if c != ZERO:
            acc = interval_add(acc, interval_mul(c, interval_pow(H, k)))
    return acc


@dataclass(frozen=True)
class TaylorModel:
    center: Fraction
    degree: int
    coeffs: tuple
    factor: Interval
    domain: Interval

    @property
    def offsets(self):
        """H = D - c, the range of h."""
        return interval_sub(self.domain, Interval.point(self.center))

    @property
    def remainder(self):
        return interval_mul(interval_pow(self.offsets, self.degree + 1), self.factor)

    def poly_range(self):
        return _power_sum(self.coeffs, self.offsets)

    def range(self):
        """Enclosure of f over the whole domain."""
        return interval_add(self.poly_range(), self.remainder)

    def at(self, x):
        """Enclosure of f(x) for one x in the domain."""
        h = Interval.point(Fraction(x) - self.center)
        return interval_add(_horner(self.coeffs, h), self.remainder)

    def contains_value(self, x, y):
        return self.at(x).contains(y)

    def shifted(self, j):
        """The model of f / h^j, valid when C_0..C_{j-1} are exactly zero."""
        if any(c != ZERO for c in self.coeffs[:j]):
            raise ValueError("low coefficients are not exactly zero")
        return TaylorModel(self.center, self.degree - j, self.coeffs[j:], self.factor, self.domain)

    def __str__(self):
        terms = " + ".join(f"{c}·h^{k}" for k, c in enumerate(self.coeffs))
        return f"{terms} + h^{self.degree + 1}·{self.factor} on {self.domain} (c = {self.center})"


# -- arithmetic on models (same center, degree, domain) -------------------------------------

def _const(value, c, n, d):
    coeffs = (value,) + (ZERO,) * n
    return TaylorModel(c, n, coeffs, ZERO, d)


def _var(c, n, d):
    if n == 0:
        return TaylorModel(c, 0, (Interval.point(c),), ONE, d)
    coeffs = (Interval.point(c), ONE) + (ZERO,) * (n - 1)
    return TaylorModel(c, n, coeffs, ZERO, d)


def tm_add(a, b):
    return TaylorModel(a.center, a.degree, tuple(interval_add(x, y) for x, y in zip(a.coeffs, b.coeffs)),
                       interval_add(a.factor, b.factor), a.domain)


def tm_scale(a, s):
    return TaylorModel(a.center, a.degree, tuple(interval_mul(x, s) for x in a.coeffs),
                       interval_mul(a.factor, s), a.domain)


def tm_neg(a):
    return tm_scale(a, Interval(-1.0, -1.0))


def tm_sub(a, b):
    return tm_add(a, tm_neg(b))


def tm_mul(a, b):
    n = a.degree
    H = a.offsets
    prod = [ZERO] * (2 * n + 1)
    for i, x in enumerate(a.coeffs):
        if x == ZERO:
            continue
        for j, y in enumerate(b.coeffs):
            if y != ZERO:
                prod[i + j] = interval_add(prod[i + j], interval_mul(x, y))
    # terms above degree n move into the h^(n+1) factor
    factor = ZERO
    for k in range(2 * n, n, -1):
        factor = interval_add(interval_mul(factor, H), prod[k])
    pa, pb = a.poly_range(), b.poly_range()
    factor = interval_add(factor, interval_mul(a.factor, pb))
    factor = interval_add(factor, interval_mul(b.factor, pa))
    factor = interval_add(factor, interval_mul(interval_mul(a.factor, b.factor),
                                               interval_pow(H, n + 1)))
    return TaylorModel(a.center, n, tuple(prod[: n + 1]), factor, a.domain)


def _tm_pow(a, k):
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else tm_mul(result, base)
        k >>= 1
        if k:
            base = tm_mul(base, base)
    return result


# -- elementary functions --------------------------------------------------------------------

def _sin_derivs(v, m):
    """m-th derivative of sin at (interval) v."""
    return (interval_sin, interval_cos, lambda t: -interval_sin(t), lambda t: -interval_cos(t))[m % 4](v)


def _cos_derivs(v, m):
    return _sin_derivs(v, m + 1)


def _taylor_coeff(name, v, m):
    """φ^(m)(v) / m! enclosed over the interval v."""
    fact = Interval.point(Fraction(1, math.factorial(m)))
    if name == "sin":
        return interval_mul(_sin_derivs(v, m), fact)
    if name == "cos":
        return interval_mul(_cos_derivs(v, m), fact)
    if name == "exp":
        return interval_mul(interval_exp(v), fact)
    if name == "ln":
        if v.lo <= 0:
            raise DomainViolation(f"logarithm over {v}, which reaches nonpositive values")
        if m == 0:
            return interval_ln(v)
        sign = 1.0 if m % 2 == 1 else -1.0
        return interval_div(Interval(sign, sign), interval_mul(Interval.point(m), interval_pow(v, m)))
    if name == "recip":
        if v.contains_zero():
            raise DenominatorMayVanish(f"denominator enclosure {v} contains 0")
        sign = 1.0 if m % 2 == 0 else -1.0
        return interval_div(Interval(sign, sign), interval_pow(v, m + 1))
    raise UnsupportedNode(name)


def tm_compose(name, u):
    """Model of φ(u) for φ in sin, cos, exp, ln, recip."""
    n = u.degree
    H = u.offsets
    U = u.range()
    if name == "recip" and U.contains_zero():
        raise DenominatorMayVanish(f"denominator enclosure {U} contains 0")
    if name == "ln" and U.lo <= 0:
        raise DomainViolation(f"logarithm argument enclosure {U} reaches nonpositive values")
    c0 = u.coeffs[0]
    a0 = c0.mid
    point = Interval(a0, a0)
    delta = interval_sub(c0, point)
    v = TaylorModel(u.center, n, (delta,) + u.coeffs[1:], u.factor, u.domain)   # u - a0
    V = interval_sub(U, point)
    # φ(a0 + v) = Σ_{m ≤ n+1} φ^(m)(a0)/m! v^m + φ^(n+2)(ξ)/(n+2)! v^(n+2)
    result = _const(_taylor_coeff(name, point, 0), u.center, n, u.domain)
    power = None
    for m in range(1, n + 2):
        power = v if power is None else tm_mul(power, v)
        result = tm_add(result, tm_scale(power, _taylor_coeff(name, point, m)))
    lagrange = _taylor_coeff(name, interval_add(point, V), n + 2)
    if delta == ZERO:
        # v = h·s with s ranging over S, so v^(n+2) = h^(n+1) · (h · s^(n+2))
        S = interval_add(_power_sum(u.coeffs[1:], H), interval_mul(interval_pow(H, n), u.factor)) \
            if n >= 1 else u.factor
        extra = interval_mul(interval_mul(H, interval_pow(S, n + 2)), lagrange)
        return TaylorModel(u.center, n, result.coeffs, interval_add(result.factor, extra), u.domain)
    extra = interval_mul(interval_pow(V, n + 2), lagrange)
    coeffs = (interval_add(result.coeffs[0], extra),) + result.coeffs[1:]
    return TaylorModel(u.center, n, coeffs, result.factor, u.domain)


def _build(e, c, n, d):
    if isinstance(e, Var):
        return _var(c, n, d)
    if isinstance(e, Const):
        return _const(Interval.point(e.value), c, n, d)
    if isinstance(e, Neg):
        return tm_neg(_build(e.arg, c, n, d))
    if isinstance(e, (Add, Sub, Mul, Div)):
        a = _build(e.left, c, n, d)
        b = _build(e.right, c, n, d)
        if isinstance(e, Add):
            return tm_add(a, b)
        if isinstance(e, Sub):
            return tm_sub(a, b)
        if isinstance(e, Mul):
            return tm_mul(a, b)
        return tm_mul(a, tm_compose("recip", b))
    if isinstance(e, Pow):
        a = _build(e.base, c, n, d)
        k = e.exponent
        if k == 0:
            return _const(ONE, c, n, d)
        p = _tm_pow(a, abs(k))
        return p if k > 0 else tm_compose("recip", p)
    if isinstance(e, Func):
        if e.name in ("abs", "sqrt"):
            raise UnsupportedNode(f"{e.name} has no Taylor model here")
        return tm_compose(e.name, _build(e.arg, c, n, d))
    raise UnsupportedNode(f"not an expression node: {e!r}")


def _has_var(e):
    if isinstance(e, Var):
        return True
    if isinstance(e, Const):
        return False
    if isinstance(e, (Neg, Func)):
        return _has_var(e.arg)
    if isinstance(e, Pow):
        return _has_var(e.base)
    return _has_var(e.left) or _has_var(e.right)


def taylor_model(e, point, degree, domain):
    """Taylor model of e about ``point`` (rational) valid on ``domain``."""
    c = Fraction(point)
    domain = domain.floats()
    if not domain.contains(float(c)) and not (domain.lo <= c <= domain.hi):
        raise ValueError(f"expansion point {c} lies outside {domain}")
    if not _has_var(e):
        # constant expressions: degree 0, no remainder
        return TaylorModel(c, 0, (eval_interval(e, Interval(float(c), float(c))),), ZERO, domain)
    return _build(e, c, degree, domain)
