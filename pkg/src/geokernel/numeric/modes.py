"""Scalar evaluation modes and the k-decimal display convention."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from ..errors import NonFinite
from .exact import ExactScalar
from .interval import Interval

EXACT = "exact"
FLOAT = "float"
DISPLAY = "display"


@dataclass(frozen=True)
class ScalarMode:
    kind: str = EXACT
    decimals: int = 2

    def __post_init__(self):
        if self.kind not in (EXACT, FLOAT, DISPLAY):
            raise ValueError(f"unknown scalar mode {self.kind!r}")
        if self.decimals < 0:
            raise ValueError("decimals must be nonnegative")

    @property
    def is_exact(self):
        return self.kind == EXACT

    @property
    def snaps(self):
        return self.kind == DISPLAY

    def literal(self, q):
        """Turn a rational program literal into this mode's scalar."""
        if self.kind == EXACT:
            return ExactScalar(q)
        if self.kind == DISPLAY:
            return float(round_display(float(q), self.decimals))
        return float(q)

    def label(self):
        if self.kind == DISPLAY:
            return f"display({self.decimals})"
        return self.kind

    @classmethod
    def parse(cls, text, decimals=2):
        text = text.strip().lower()
        if text in ("exact", "float"):
            return cls(text, decimals)
        if text in ("display", "displayrounded", "rounded"):
            return cls(DISPLAY, decimals)
        if text.startswith("display(") and text.endswith(")"):
            return cls(DISPLAY, int(text[8:-1]))
        raise ValueError(f"unknown scalar mode {text!r}")


Exact = ScalarMode(EXACT)
Float = ScalarMode(FLOAT)


def DisplayRounded(k=2):
    return ScalarMode(DISPLAY, k)


def round_display(x, k=2):
    """Round a binary64 value to k decimals, halves away from zero.

    Rounding acts on the shortest decimal string that reproduces x, the way a
    user reads the number, so 2.455 rounds to 2.46 even though the nearest
    double lies just below 2.455.
    """
    if isinstance(x, float) and not math.isfinite(x):
        raise NonFinite(f"cannot display {x}")
    d = Decimal(repr(float(x))) if isinstance(x, float) else Decimal(x)
    r = d.quantize(Decimal(1).scaleb(-k), rounding=ROUND_HALF_UP)
    if r == 0:
        r = abs(r)
    return r


def format_decimal(d):
    """Display form of a Decimal with trailing zeros dropped (8.30 -> 8.3)."""
    if d == 0:
        return "0"
    text = format(d.normalize(), "f")
    return text


def to_interval(a, precision):
    """Rational-endpoint enclosure of width at most 2**-precision."""
    if not isinstance(a, ExactScalar):
        a = ExactScalar(a)
    if a.is_rational():
        q = a.as_fraction()
        return Interval(q, q)
    target = Fraction(1, 1 << precision)
    bits = precision + 16
    while True:
        lo, hi = a.enclosure(bits)
        if hi - lo <= target:
            return Interval(lo, hi)
        bits *= 2


def to_float(v):
    return float(v)


def to_fraction(v, bits=96):
    """Exact rational for rationals and floats; a tight midpoint otherwise."""
    if isinstance(v, ExactScalar):
        if v.is_rational():
            return v.as_fraction()
        lo, hi = v.enclosure(bits)
        return (lo + hi) / 2
    if isinstance(v, Decimal):
        return Fraction(v)
    return Fraction(v)
