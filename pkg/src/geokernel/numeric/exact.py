"""Constructible reals as coordinate vectors over a tower of quadratic extensions.

A tower ``(g1, ..., gk)`` stands for Q(sqrt g1)(sqrt g2)...(sqrt gk).  Each
generator ``gi`` is stored as its own coordinate tuple over the prefix tower
``(g1, ..., g(i-1))``, so a tower is a plain tuple of tuples of Fractions and
can be compared and hashed structurally.

An element over a tower of depth k is a tuple of ``2**k`` Fractions.  Bit ``j``
of a coordinate index says whether ``sqrt(g(j+1))`` is a factor of that basis
monomial, so the top half of the vector is the coefficient of the last
generator:  ``x = low + high * sqrt(gk)``.

Every generator is checked to be positive and not a square of the field below
it before it is adjoined, which makes the basis linearly independent: an
element is zero iff all its coordinates are zero.
"""

from __future__ import annotations

import contextlib
import contextvars
import functools
import math
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

from ..errors import (
    DivisionByZero,
    NegativeRadicand,
    PrecisionCapExceeded,
    TowerDepthExceeded,
)

MAX_TOWER_DEPTH = 8
SIGN_PRECISION_CAP = 1 << 16

_ZERO = Fraction(0)
_ONE = Fraction(1)

_depth_limit = contextvars.ContextVar("tower_depth_limit", default=MAX_TOWER_DEPTH)


@contextlib.contextmanager
def tower_depth_limit(depth):
    """Temporarily change the maximum tower depth for the current context."""
    token = _depth_limit.set(int(depth))
    try:
        yield
    finally:
        _depth_limit.reset(token)


def _check_depth(depth):
    limit = _depth_limit.get()
    if depth > limit:
        raise TowerDepthExceeded(f"tower depth {depth} exceeds the limit of {limit}")


# -- coordinate arithmetic ---------------------------------------------------

def _is_zero(x):
    return not any(x)


def _zeros(n):
    return (_ZERO,) * n


def _pad(x, size):
    return x + _zeros(size - len(x))


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _neg(x):
    return tuple(-a for a in x)


def _scale(x, q):
    return tuple(a * q for a in x)


def _mul(x, y, tower):
    if not tower:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, e = y[:h], y[h:]
    sub = tower[:-1]
    bz, ez = _is_zero(b), _is_zero(e)
    if bz and ez:
        return _mul(a, c, sub) + _zeros(h)
    if bz:
        return _mul(a, c, sub) + _mul(a, e, sub)
    if ez:
        return _mul(a, c, sub) + _mul(b, c, sub)
    low = _add(_mul(a, c, sub), _mul(_mul(b, e, sub), tower[-1], sub))
    high = _add(_mul(a, e, sub), _mul(b, c, sub))
    return low + high


def _inv(x, tower):
    if not tower:
        if x[0] == 0:
            raise DivisionByZero("division by exact zero")
        return (1 / x[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    sub = tower[:-1]
    if _is_zero(b):
        return _inv(a, sub) + _zeros(h)
    # 1/(a + b r) = (a - b r) / (a^2 - d b^2); the norm is nonzero because d is not a square
    norm = _sub(_mul(a, a, sub), _mul(tower[-1], _mul(b, b, sub), sub))
    ninv = _inv(norm, sub)
    return _mul(a, ninv, sub) + _neg(_mul(b, ninv, sub))


def _rational_sqrt(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_in_field(x, tower):
    """Some y in the field with y*y == x, or None.  The sign of y is arbitrary."""
    if not tower:
        r = _rational_sqrt(x[0])
        return None if r is None else (r,)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    sub = tower[:-1]
    d = tower[-1]
    if _is_zero(b):
        p = _sqrt_in_field(a, sub)
        if p is not None:
            return p + _zeros(h)
        q = _sqrt_in_field(_mul(a, _inv(d, sub), sub), sub)
        if q is not None:
            return _zeros(h) + q
        return None
    # (p + q r)^2 = a + b r  =>  p^2 = (a +- sqrt(a^2 - d b^2)) / 2,  q = b / 2p
    disc = _sub(_mul(a, a, sub), _mul(d, _mul(b, b, sub), sub))
    n = _sqrt_in_field(disc, sub)
    if n is None:
        return None
    for s in (n, _neg(n)):
        p = _sqrt_in_field(_scale(_add(a, s), Fraction(1, 2)), sub)
        if p is not None and not _is_zero(p):
            q = _mul(b, _inv(_scale(p, 2), sub), sub)
            return p + q
    return None


# -- rigorous enclosures -----------------------------------------------------

def _floor_dyadic(q, bits):
    return Fraction(math.floor(q * (1 << bits)), 1 << bits)


def _ceil_dyadic(q, bits):
    return Fraction(math.ceil(q * (1 << bits)), 1 << bits)


def _sqrt_enclosure(lo, hi, bits):
    scale = 1 << bits
    lo = max(lo, _ZERO)
    slo = Fraction(math.isqrt(math.floor(lo * scale * scale)), scale)
    shi = Fraction(math.isqrt(math.ceil(hi * scale * scale)) + 1, scale)
    return slo, shi


def _imul(x, y):
    p = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return min(p), max(p)


def _enclose_with(x, gens, bits):
    if len(x) == 1:
        return x[0], x[0]
    h = len(x) // 2
    k = len(gens) - 1
    a = _enclose_with(x[:h], gens[:k], bits)
    if _is_zero(x[h:]):
        return a
    b = _enclose_with(x[h:], gens[:k], bits)
    lo, hi = _imul(b, gens[k])
    return _floor_dyadic(a[0] + lo, bits), _ceil_dyadic(a[1] + hi, bits)


def _generator_roots(tower, bits):
    roots = []
    for g in tower:
        lo, hi = _enclose_with(g, roots, bits)
        roots.append(_sqrt_enclosure(lo, hi, bits))
    return roots


def _enclose(x, tower, bits):
    return _enclose_with(x, _generator_roots(tower, bits), bits)


def _sign(x, tower):
    if _is_zero(x):
        return 0
    if not tower:
        return 1 if x[0] > 0 else -1
    bits = 64
    while bits <= SIGN_PRECISION_CAP:
        lo, hi = _enclose(x, tower, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise PrecisionCapExceeded("sign refinement exceeded the precision cap")


# -- towers ------------------------------------------------------------------

def _basis(j, depth):
    x = [_ZERO] * (1 << depth)
    x[1 << j] = _ONE
    return tuple(x)


def _embed(x, images, tower):
    """Map coordinates over a foreign tower into ``tower``.

    ``images[j]`` is the image in ``tower`` of the foreign generator root
    sqrt(g(j+1)).
    """
    if len(x) == 1:
        return _pad(x, 1 << len(tower))
    h = len(x) // 2
    m = len(images) - 1
    low = _embed(x[:h], images[:m], tower)
    high = x[h:]
    if _is_zero(high):
        return low
    return _add(low, _mul(_embed(high, images[:m], tower), images[m], tower))


@functools.lru_cache(maxsize=4096)
def _merge(t1, t2):
    """Common tower of t1 and t2, plus the images of t2's generator roots in it."""
    common = 0
    while common < min(len(t1), len(t2)) and t1[common] == t2[common]:
        common += 1
    tower = t1
    images = [_basis(j, len(tower)) for j in range(common)]
    for j in range(common, len(t2)):
        g = _embed(t2[j], images, tower)
        r = _sqrt_in_field(g, tower)
        if r is not None:
            if _sign(r, tower) < 0:
                r = _neg(r)
            images.append(r)
            continue
        _check_depth(len(tower) + 1)
        tower = tower + (g,)
        size = 1 << len(tower)
        images = [_pad(im, size) for im in images]
        images.append(_basis(len(tower) - 1, len(tower)))
    return tower, tuple(images)


def _trim(tower, x):
    """Drop generators that neither x nor a later generator depends on."""
    j = len(tower) - 1
    while j >= 0:
        bit = 1 << j
        used = any(c for i, c in enumerate(x) if i & bit)
        if not used:
            used = any(any(c for i, c in enumerate(g) if i & bit) for g in tower[j + 1:])
        if not used:
            x = tuple(c for i, c in enumerate(x) if not i & bit)
            tower = tower[:j] + tuple(
                tuple(c for i, c in enumerate(g) if not i & bit) for g in tower[j + 1:]
            )
        j -= 1
    return tower, x


def _square_free(m):
    """Split a positive integer as s*s*f, removing square factors of small primes."""
    s = 1
    p = 2
    while p <= 1000 and p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(m)
    if r * r == m:
        return s * r, 1
    return s, m


def _to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, (str, Decimal)):
        return Fraction(value)
    raise TypeError(f"cannot make an exact scalar from {type(value).__name__}")


class ExactScalar:
    """An exact constructible real number.

    Build rationals with ``ExactScalar(3)``, ``ExactScalar("-2.97")`` or
    ``ExactScalar(Fraction(1, 3))``; obtain irrationals through :meth:`sqrt`.
    """

    __slots__ = ("tower", "coords")

    def __init__(self, value=0):
        self.tower = ()
        self.coords = (_to_fraction(value),)

    @classmethod
    def _make(cls, tower, coords):
        tower, coords = _trim(tower, coords)
        obj = cls.__new__(cls)
        obj.tower = tower
        obj.coords = coords
        return obj

    # -- conversions ---------------------------------------------------------

    @property
    def depth(self):
        return len(self.tower)

    def is_rational(self):
        return not self.tower

    def as_fraction(self):
        if self.tower:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def enclosure(self, bits=64):
        """Rational (lo, hi) bounds containing the value."""
        return _enclose(self.coords, self.tower, bits)

    def __float__(self):
        if not self.tower:
            return float(self.coords[0])
        lo, hi = self.enclosure(96)
        return float((lo + hi) / 2)

    def sign(self):
        return _sign(self.coords, self.tower)

    def is_zero(self):
        return _is_zero(self.coords)

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other)
        return None

    def _aligned(self, other):
        if self.tower == other.tower:
            return self.tower, self.coords, other.coords
        if not other.tower:
            return self.tower, self.coords, _pad(other.coords, len(self.coords))
        if not self.tower:
            return other.tower, _pad(self.coords, len(other.coords)), other.coords
        tower, images = _merge(self.tower, other.tower)
        _check_depth(len(tower))
        size = 1 << len(tower)
        return tower, _pad(self.coords, size), _embed(other.coords, images, tower)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        tower, x, y = self._aligned(other)
        return ExactScalar._make(tower, _add(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        tower, x, y = self._aligned(other)
        return ExactScalar._make(tower, _sub(x, y))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.tower:
            return ExactScalar._make(self.tower, _scale(self.coords, other.coords[0]))
        if not self.tower:
            return ExactScalar._make(other.tower, _scale(other.coords, self.coords[0]))
        tower, x, y = self._aligned(other)
        return ExactScalar._make(tower, _mul(x, y, tower))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by exact zero")
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def reciprocal(self):
        if self.is_zero():
            raise DivisionByZero("division by exact zero")
        return ExactScalar._make(self.tower, _inv(self.coords, self.tower))

    def __neg__(self):
        return ExactScalar._make(self.tower, _neg(self.coords))

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** -n
        result = ExactScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self):
        """The nonnegative square root, extending the tower if needed."""
        s = self.sign()
        if s < 0:
            raise NegativeRadicand(f"square root of negative value {self}")
        if s == 0:
            return ExactScalar(0)
        if not self.tower:
            q = self.coords[0]
            r = _rational_sqrt(q)
            if r is not None:
                return ExactScalar(r)
            coef, free = _square_free(q.numerator * q.denominator)
            _check_depth(1)
            return ExactScalar._make(((Fraction(free),),), (_ZERO, Fraction(coef, q.denominator)))
        r = _sqrt_in_field(self.coords, self.tower)
        if r is not None:
            if _sign(r, self.tower) < 0:
                r = _neg(r)
            return ExactScalar._make(self.tower, r)
        _check_depth(len(self.tower) + 1)
        tower = self.tower + (self.coords,)
        return ExactScalar._make(tower, _basis(len(tower) - 1, len(tower)))

    # -- comparisons ---------------------------------------------------------

    def _cmp(self, other):
        other = self._coerce(other)
        if other is None:
            return None
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, float):
            return NotImplemented
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        # consistent with Fraction for rationals; irrationals hash their canonical form
        if not self.tower:
            return hash(self.coords[0])
        return hash((self.tower, self.coords))

    def __bool__(self):
        return not self.is_zero()

    # -- printing ------------------------------------------------------------

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        return _format(self.coords, self.tower)


def _format(x, tower):
    if len(x) == 1:
        return str(x[0])
    roots = [f"sqrt({_format(g, tower[:i])})" for i, g in enumerate(tower)]
    terms = []
    for i, c in enumerate(x):
        if not c:
            continue
        factors = [roots[j] for j in range(len(tower)) if i & (1 << j)]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out


def exact(value):
    """Coerce ints, Fractions, decimal strings or ExactScalars into an ExactScalar."""
    if isinstance(value, ExactScalar):
        return value
    return ExactScalar(value)


def sqrt(a):
    return exact(a).sqrt()


def sign(a):
    return exact(a).sign()
