from .exact import ExactScalar, exact, sign, sqrt, tower_depth_limit, MAX_TOWER_DEPTH
from .interval import (
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
from .modes import (
    DISPLAY,
    EXACT,
    FLOAT,
    DisplayRounded,
    Exact,
    Float,
    ScalarMode,
    format_decimal,
    round_display,
    to_fraction,
    to_interval,
)

__all__ = [
    "ExactScalar", "exact", "sign", "sqrt", "tower_depth_limit", "MAX_TOWER_DEPTH",
    "Interval", "interval_abs", "interval_add", "interval_cos", "interval_div",
    "interval_exp", "interval_ln", "interval_mul", "interval_pow", "interval_sin",
    "interval_sqrt", "interval_sub",
    "DISPLAY", "EXACT", "FLOAT", "DisplayRounded", "Exact", "Float", "ScalarMode",
    "format_decimal", "round_display", "to_fraction", "to_interval",
]
