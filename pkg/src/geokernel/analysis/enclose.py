"""Interval evaluation of expressions over the part of X where they are defined."""

from __future__ import annotations

import math

from ..errors import DomainViolation
from ..numeric.interval import (
    INF,
    Interval,
    interval_abs,
    interval_add,
    interval_cos,
    interval_div,
    interval_exp,
    interval_ln,
    interval_mul,
    interval_pow,
    interval_sin,
    interval_sqrt,
    interval_sub,
)
from .expr import Add, Const, Div, Func, Mul, Neg, Pow, Sub, Var

ENTIRE = Interval(-INF, INF)


def _recip(y):
    """(enclosure of 1/y over y != 0, whether 0 was dropped); None if y == {0}."""
    if y.lo == 0 and y.hi == 0:
        return None, True
    if not y.contains_zero():
        return interval_div(Interval(1.0, 1.0), y), False
    if y.lo == 0:
        return Interval(interval_div(Interval(1.0, 1.0), Interval(y.hi, y.hi)).lo, INF), True
    if y.hi == 0:
        return Interval(-INF, interval_div(Interval(1.0, 1.0), Interval(y.lo, y.lo)).hi), True
    return ENTIRE, True


def _safe(op, *args):
    try:
        return op(*args)
    except (ValueError, OverflowError):
        # inf - inf and similar: fall back to the whole line, still an enclosure
        return ENTIRE


def enclose(e, X):
    """(Y, partial): Y encloses e over X minus the points where e is undefined.

    Y is None when e is undefined on all of X; ``partial`` is set when X
    may contain points outside the domain of e.
    """
    X = X.floats()
    if isinstance(e, Var):
        return X, False
    if isinstance(e, Const):
        return Interval.point(e.value), False
    if isinstance(e, Neg):
        a, p = enclose(e.arg, X)
        return (None if a is None else -a), p
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, pa = enclose(e.left, X)
        if a is None:
            return None, True
        b, pb = enclose(e.right, X)
        if b is None:
            return None, True
        partial = pa or pb
        if isinstance(e, Add):
            return _safe(interval_add, a, b), partial
        if isinstance(e, Sub):
            return _safe(interval_sub, a, b), partial
        if isinstance(e, Mul):
            return _safe(interval_mul, a, b), partial
        r, dropped = _recip(b)
        if r is None:
            return None, True
        return _safe(interval_mul, a, r), partial or dropped
    if isinstance(e, Pow):
        a, p = enclose(e.base, X)
        if a is None:
            return None, True
        if e.exponent >= 0:
            return _safe(interval_pow, a, e.exponent), p
        r, dropped = _recip(_safe(interval_pow, a, -e.exponent))
        if r is None:
            return None, True
        return r, p or dropped
    if isinstance(e, Func):
        a, p = enclose(e.arg, X)
        if a is None:
            return None, True
        name = e.name
        if name == "sin":
            return interval_sin(a), p
        if name == "cos":
            return interval_cos(a), p
        if name == "exp":
            return interval_exp(a), p
        if name == "abs":
            return interval_abs(a), p
        if name == "sqrt":
            if a.hi < 0:
                return None, True
            return interval_sqrt(Interval(max(a.lo, 0.0), a.hi)), p or a.lo < 0
        # ln
        if a.hi <= 0:
            return None, True
        if a.lo > 0:
            return interval_ln(a), p
        return Interval(-INF, interval_ln(Interval(a.hi, a.hi)).hi), True
    raise TypeError(f"not an expression node: {e!r}")


def eval_interval(e, X):
    """Enclosure of the image of e over X (restricted to its domain)."""
    y, _ = enclose(e, X)
    if y is None:
        raise DomainViolation(f"{e} is undefined on all of {X}")
    return y


def is_finite_interval(y):
    return y is not None and math.isfinite(y.lo) and math.isfinite(y.hi)


# -- derivative enclosures (forward mode) and the mean-value form ------------------

class _NoDerivative(Exception):
    pass


def _deriv(e, X):
    """(F, D): enclosures of e and e' over X, for e defined on all of X.

    Nondifferentiable points of abs only need a Lipschitz bound, so D may
    be [-L, L] there; the mean-value form stays valid.
    """
    if isinstance(e, Var):
        return X, Interval(1.0, 1.0)
    if isinstance(e, Const):
        return Interval.point(e.value), Interval(0.0, 0.0)
    if isinstance(e, Neg):
        f, d = _deriv(e.arg, X)
        return -f, -d
    if isinstance(e, (Add, Sub, Mul, Div)):
        u, du = _deriv(e.left, X)
        v, dv = _deriv(e.right, X)
        if isinstance(e, Add):
            return interval_add(u, v), interval_add(du, dv)
        if isinstance(e, Sub):
            return interval_sub(u, v), interval_sub(du, dv)
        if isinstance(e, Mul):
            return interval_mul(u, v), interval_add(interval_mul(du, v), interval_mul(u, dv))
        if v.contains_zero():
            raise _NoDerivative
        q = interval_div(u, v)
        return q, interval_div(interval_sub(du, interval_mul(q, dv)), v)
    if isinstance(e, Pow):
        u, du = _deriv(e.base, X)
        n = e.exponent
        if n < 0 and u.contains_zero():
            raise _NoDerivative
        if n == 0:
            return Interval(1.0, 1.0), Interval(0.0, 0.0)
        return interval_pow(u, n), interval_mul(interval_mul(Interval.point(n), interval_pow(u, n - 1)), du)
    u, du = _deriv(e.arg, X)
    name = e.name
    if name == "sin":
        return interval_sin(u), interval_mul(interval_cos(u), du)
    if name == "cos":
        return interval_cos(u), interval_mul(-interval_sin(u), du)
    if name == "exp":
        f = interval_exp(u)
        return f, interval_mul(f, du)
    if name == "ln":
        if u.lo <= 0:
            raise _NoDerivative
        return interval_ln(u), interval_div(du, u)
    if name == "abs":
        f = interval_abs(u)
        if u.lo > 0:
            return f, du
        if u.hi < 0:
            return f, -du
        m = du.mag
        return f, Interval(-m, m)
    # sqrt
    if u.lo <= 0:
        raise _NoDerivative
    f = interval_sqrt(u)
    return f, interval_div(du, interval_mul(Interval(2.0, 2.0), f))


def mean_value_enclosure(e, X):
    """f(m) + f'(X)(X - m), or None when e or e' is not bounded on X."""
    X = X.floats()
    try:
        _, d = _deriv(e, X)
        m = X.mid
        fm, partial = enclose(e, Interval(m, m))
        if fm is None or partial:
            return None
        out = interval_add(fm, interval_mul(d, interval_sub(X, Interval(m, m))))
    except (_NoDerivative, DomainViolation, ValueError, OverflowError):
        return None
    return out if out.is_bounded() else None
