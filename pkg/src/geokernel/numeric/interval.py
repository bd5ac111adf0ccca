"""Closed real intervals with binary64 endpoints and directed rounding.

Sums and products are rounded outward exactly: an error-free transformation
(TwoSum / Dekker's TwoProduct) tells whether the nearest-rounded result sits
above or below the true value, and only then is the endpoint moved one ulp.
Library transcendentals are widened by a fixed number of ulps since libm does
not guarantee correct rounding.

Endpoints may also be Fractions (``to_interval`` produces those); every
operation converts them outward to binary64 first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..errors import DomainViolation

INF = math.inf
_LIBM_ULPS = 2
_SPLITTER = 134217729.0  # 2**27 + 1
_SAFE_HI = 2.0 ** 996
_SAFE_LO = 2.0 ** -969


def _next_down(x, n=1):
    for _ in range(n):
        x = math.nextafter(x, -INF)
    return x


def _next_up(x, n=1):
    for _ in range(n):
        x = math.nextafter(x, INF)
    return x


def _down(v):
    """Largest float <= v for a float or Fraction v."""
    if isinstance(v, float):
        return v
    f = float(v)
    if Fraction(f) > v:
        f = _next_down(f)
    return f


def _up(v):
    if isinstance(v, float):
        return v
    f = float(v)
    if Fraction(f) < v:
        f = _next_up(f)
    return f


def _two_sum_err(a, b, s):
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod_err(a, b, p):
    ah, al = _split(a)
    bh, bl = _split(b)
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add_down(a, b):
    s = a + b
    if not math.isfinite(s):
        return s if not math.isnan(s) else -INF
    return s if _two_sum_err(a, b, s) >= 0 else _next_down(s)


def add_up(a, b):
    s = a + b
    if not math.isfinite(s):
        return s if not math.isnan(s) else INF
    return s if _two_sum_err(a, b, s) <= 0 else _next_up(s)


def _mul_exactness(a, b, p):
    """Sign of (a*b - p) as computed exactly, or None when unknown."""
    if p == 0 or not math.isfinite(p):
        return 0 if (a == 0 or b == 0) else None
    ap, ab, aa = abs(p), abs(b), abs(a)
    if ap > _SAFE_HI or ap < _SAFE_LO or aa > _SAFE_HI or ab > _SAFE_HI:
        return None
    e = _two_prod_err(a, b, p)
    return (e > 0) - (e < 0)


def mul_down(a, b):
    if a == 0 or b == 0:
        return 0.0
    p = a * b
    if math.isinf(p):
        return p if p < 0 or (math.isinf(a) or math.isinf(b)) else _SAFE_MAX
    s = _mul_exactness(a, b, p)
    if s is None:
        return _next_down(p)
    return p if s >= 0 else _next_down(p)


def mul_up(a, b):
    if a == 0 or b == 0:
        return 0.0
    p = a * b
    if math.isinf(p):
        return p if p > 0 or (math.isinf(a) or math.isinf(b)) else -_SAFE_MAX
    s = _mul_exactness(a, b, p)
    if s is None:
        return _next_up(p)
    return p if s <= 0 else _next_up(p)


_SAFE_MAX = 1.7976931348623157e308


def _div_dir(a, b, up):
    if math.isinf(a) or math.isinf(b):
        if math.isinf(a) and math.isinf(b):
            return INF if up else -INF
        q = a / b
        return q
    q = a / b
    if math.isinf(q):
        return q if (q > 0) == up else math.copysign(_SAFE_MAX, q)
    side = _div_side(a, b, q)
    if up and side > 0:
        return _next_up(q)
    if not up and side < 0:
        return _next_down(q)
    return q


def _div_side(a, b, q):
    """Sign of a/b - q, exactly."""
    if q == 0 or a == 0:
        return 0 if a == 0 else (1 if (a > 0) == (b > 0) else -1)
    aq, ab, aa = abs(q), abs(b), abs(a)
    if _SAFE_LO < aq < _SAFE_HI and _SAFE_LO < ab < _SAFE_HI and _SAFE_LO < aa < _SAFE_HI:
        # the remainder a - q*b of a correctly rounded quotient is a float
        p = q * b
        r = (a - p) - _two_prod_err(q, b, p)
        sr = (r > 0) - (r < 0)
        return sr if b > 0 else -sr
    exact = Fraction(a) / Fraction(b)
    fq = Fraction(q)
    return (exact > fq) - (exact < fq)


def _widen_down(x, n=_LIBM_ULPS):
    if math.isinf(x):
        return x
    return _next_down(x, n)


def _widen_up(x, n=_LIBM_ULPS):
    if math.isinf(x):
        return x
    return _next_up(x, n)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``; endpoints may be infinite."""

    lo: float
    hi: float

    def __post_init__(self):
        if self.lo != self.lo or self.hi != self.hi:
            raise ValueError("interval endpoint is NaN")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x):
        """Tightest binary64 interval containing the number x."""
        if isinstance(x, float):
            return cls(x, x)
        q = Fraction(x)
        return cls(_down(q), _up(q))

    @classmethod
    def hull_of(cls, *values):
        return cls(min(values), max(values))

    @classmethod
    def entire(cls):
        return cls(-INF, INF)

    def floats(self):
        """Outward conversion to an interval with float endpoints."""
        if isinstance(self.lo, float) and isinstance(self.hi, float):
            return self
        return Interval(_down(self.lo), _up(self.hi))

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        if math.isinf(self.lo) or math.isinf(self.hi):
            if math.isinf(self.lo) and math.isinf(self.hi):
                return 0.0
            return self.lo if math.isinf(self.hi) else self.hi
        return self.lo + (self.hi - self.lo) / 2

    @property
    def mag(self):
        return max(abs(self.lo), abs(self.hi))

    def is_bounded(self):
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, x):
        return self.lo <= x <= self.hi

    def __contains__(self, x):
        return self.contains(x)

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def subset_of(self, other):
        return other.lo <= self.lo and self.hi <= other.hi

    def hull(self, other):
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        return interval_add(self, _as_interval(other))

    __radd__ = __add__

    def __sub__(self, other):
        return interval_sub(self, _as_interval(other))

    def __rsub__(self, other):
        return interval_sub(_as_interval(other), self)

    def __mul__(self, other):
        return interval_mul(self, _as_interval(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return interval_div(self, _as_interval(other))

    def __rtruediv__(self, other):
        return interval_div(_as_interval(other), self)

    def __pow__(self, n):
        return interval_pow(self, n)

    def __str__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


def _as_interval(x):
    if isinstance(x, Interval):
        return x.floats()
    return Interval.point(x)


# -- arithmetic ---------------------------------------------------------------

def interval_add(x, y):
    x, y = x.floats(), y.floats()
    return Interval(add_down(x.lo, y.lo), add_up(x.hi, y.hi))


def interval_sub(x, y):
    return interval_add(x, -y.floats())


def interval_neg(x):
    return -x.floats()


def interval_mul(x, y):
    x, y = x.floats(), y.floats()
    pairs = ((x.lo, y.lo), (x.lo, y.hi), (x.hi, y.lo), (x.hi, y.hi))
    try:
        prods = [a * b for a, b in pairs]
    except ArithmeticError:
        prods = None
    if prods is None or any(math.isnan(v) for v in prods):
        lo = min(mul_down(a, b) for a, b in pairs)
        hi = max(mul_up(a, b) for a, b in pairs)
        return Interval(lo, hi)
    # only the extreme float products can carry the extreme true products:
    # p_j > p_min forces down(p_j) >= p_min >= down(p_min)
    pmin, pmax = min(prods), max(prods)
    lo = min(mul_down(a, b) for (a, b), v in zip(pairs, prods) if v == pmin)
    hi = max(mul_up(a, b) for (a, b), v in zip(pairs, prods) if v == pmax)
    return Interval(lo, hi)


def interval_div(x, y):
    x, y = x.floats(), y.floats()
    if y.contains_zero():
        raise DomainViolation(f"division by an interval containing zero {y}")
    pairs = ((x.lo, y.lo), (x.lo, y.hi), (x.hi, y.lo), (x.hi, y.hi))
    lo = min(_div_dir(a, b, False) for a, b in pairs)
    hi = max(_div_dir(a, b, True) for a, b in pairs)
    return Interval(lo, hi)


def interval_recip(y):
    return interval_div(Interval(1.0, 1.0), y)


def _sqrt_down(a):
    if a <= 0:
        return 0.0
    if math.isinf(a):
        return a
    s = math.sqrt(a)
    if Fraction(s) ** 2 > Fraction(a):
        s = _next_down(s)
    return s


def _sqrt_up(a):
    if a <= 0:
        return 0.0
    if math.isinf(a):
        return a
    s = math.sqrt(a)
    if Fraction(s) ** 2 < Fraction(a):
        s = _next_up(s)
    return s


def interval_sqrt(x):
    x = x.floats()
    if x.hi < 0:
        raise DomainViolation(f"square root of negative interval {x}")
    return Interval(_sqrt_down(max(x.lo, 0.0)), _sqrt_up(x.hi))


def interval_abs(x):
    x = x.floats()
    if x.lo >= 0:
        return x
    if x.hi <= 0:
        return -x
    return Interval(0.0, max(-x.lo, x.hi))


def _pow_mag(a, n, up):
    """a**n for a >= 0 with directed rounding."""
    r = 1.0
    for _ in range(n):
        r = mul_up(r, a) if up else mul_down(r, a)
    return r


def interval_pow(x, n):
    """Integer power.  Negative exponents divide, so 0 must not be enclosed."""
    if not isinstance(n, int):
        raise TypeError("interval_pow takes an integer exponent")
    x = x.floats()
    if n == 0:
        return Interval(1.0, 1.0)
    if n < 0:
        return interval_recip(interval_pow(x, -n))
    if n % 2 == 0:
        a = interval_abs(x)
        return Interval(_pow_mag(a.lo, n, False), _pow_mag(a.hi, n, True))
    lo = -_pow_mag(-x.lo, n, True) if x.lo < 0 else _pow_mag(x.lo, n, False)
    hi = -_pow_mag(-x.hi, n, False) if x.hi < 0 else _pow_mag(x.hi, n, True)
    return Interval(lo, hi)


def interval_exp(x):
    x = x.floats()
    if x.lo == 0 and x.hi == 0:
        return Interval(1.0, 1.0)
    lo = 0.0 if x.lo == -INF else max(0.0, _widen_down(_safe_exp(x.lo)))
    hi = INF if x.hi == INF else _widen_up(_safe_exp(x.hi))
    return Interval(lo, hi)


def _safe_exp(v):
    try:
        return math.exp(v)
    except OverflowError:
        return INF


def interval_ln(x):
    x = x.floats()
    if x.lo <= 0:
        raise DomainViolation(f"logarithm of interval touching nonpositive values {x}")
    if x.lo == 1 and x.hi == 1:
        return Interval(0.0, 0.0)
    lo = _widen_down(math.log(x.lo))
    hi = INF if x.hi == INF else _widen_up(math.log(x.hi))
    return Interval(lo, hi)


# -- trigonometry ---------------------------------------------------------------

_TRIG_PREC = 160
_BIG_ARG = 1e15
_TWO_PI = 2 * math.pi


def _contains_phase(lo, hi, phase):
    """Whether [lo, hi] may contain a point phase + 2*pi*k for an integer k.

    Decided in 160-bit arithmetic with a slack far above its rounding error,
    so a false positive is possible but a false negative is not.  Moderate
    arguments well clear of every phase point are settled in binary64 first.
    """
    if max(abs(lo), abs(hi)) < 1e6:
        ph = float(phase)
        k = math.floor((lo - ph) / _TWO_PI)
        margin = 1e-7
        p0 = ph + k * _TWO_PI
        p1 = p0 + _TWO_PI
        p2 = p1 + _TWO_PI
        clear = all(min(abs(p - lo), abs(p - hi)) > margin for p in (p0, p1, p2))
        if clear and p0 < lo:
            return lo < p1 < hi or lo < p2 < hi
    with mpmath.workprec(_TRIG_PREC):
        two_pi = 2 * mpmath.pi
        a = mpmath.mpf(lo)
        b = mpmath.mpf(hi)
        k = mpmath.floor((a - phase) / two_pi)
        c = phase + (k + 1) * two_pi
        slack = mpmath.mpf(2) ** -100 * max(1, abs(a), abs(b))
        if phase + k * two_pi >= a - slack:
            return True
        return c <= b + slack


def _trig(x, fn, max_phase, min_phase):
    x = x.floats()
    if not x.is_bounded() or x.width >= 7 or max(abs(x.lo), abs(x.hi)) > _BIG_ARG:
        return Interval(-1.0, 1.0)
    # fn(0) is exact (sin 0 = 0, cos 0 = 1); other libm values get widened
    ends = [(fn(v), v == 0) for v in (x.lo, x.hi)]
    lo = min(v if exact else _widen_down(v) for v, exact in ends)
    hi = max(v if exact else _widen_up(v) for v, exact in ends)
    with mpmath.workprec(_TRIG_PREC):
        if _contains_phase(x.lo, x.hi, max_phase()):
            hi = 1.0
        if _contains_phase(x.lo, x.hi, min_phase()):
            lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def interval_sin(x):
    x = x.floats()
    if x.lo == 0 and x.hi == 0:
        return Interval(0.0, 0.0)
    return _trig(x, math.sin, lambda: mpmath.pi / 2, lambda: 3 * mpmath.pi / 2)


def interval_cos(x):
    x = x.floats()
    if x.lo == 0 and x.hi == 0:
        return Interval(1.0, 1.0)
    return _trig(x, math.cos, lambda: mpmath.mpf(0), lambda: mpmath.pi)
