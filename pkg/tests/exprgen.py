"""Random expression trees for soundness tests (rng-driven and hypothesis)."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from geokernel.analysis import Add, Const, Div, Func, Mul, Neg, Pow, Sub, Var

UNARY = ("sin", "cos", "exp", "ln", "abs", "sqrt")
BINARY = (Add, Sub, Mul, Div)


def random_expr(rng, depth=4):
    """A tree of depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.6:
            return Var()
        return Const(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    r = rng.random()
    if r < 0.35:
        return Func(rng.choice(UNARY), random_expr(rng, depth - 1))
    if r < 0.45:
        return Neg(random_expr(rng, depth - 1))
    if r < 0.55:
        return Pow(random_expr(rng, depth - 1), rng.choice((-2, -1, 0, 2, 3)))
    op = rng.choice(BINARY)
    return op(random_expr(rng, depth - 1), random_expr(rng, depth - 1))


def random_interval(rng):
    """Mostly modest intervals, some tiny, some straddling 0."""
    kind = rng.random()
    if kind < 0.2:
        c = rng.uniform(-3, 3)
        w = 10.0 ** rng.uniform(-9, -3)
        return c, c + w
    a, b = sorted((rng.uniform(-6, 6), rng.uniform(-6, 6)))
    if a == b:
        b = a + 1.0
    return a, b


def sample_points(rng, lo, hi, n):
    pts = [lo, hi] + [rng.uniform(lo, hi) for _ in range(n - 2)]
    return [min(max(p, lo), hi) for p in pts]


consts = st.builds(Const, st.fractions(min_value=-9, max_value=9, max_denominator=4))
leaves = st.one_of(st.just(Var()), consts)


def _extend(children):
    return st.one_of(
        st.builds(Func, st.sampled_from(UNARY), children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.sampled_from((-2, -1, 0, 2, 3))),
        st.builds(lambda op, a, b: op(a, b), st.sampled_from(BINARY), children, children),
    )


exprs = st.recursive(leaves, _extend, max_leaves=8)


def seeded_exprs(seed, count, depth=4):
    rng = random.Random(seed)
    return [random_expr(rng, depth) for _ in range(count)]
