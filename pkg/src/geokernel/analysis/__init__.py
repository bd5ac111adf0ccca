"""The function laboratory: expressions, enclosures, Taylor models, limits, plots."""

from .enclose import eval_interval, enclose, mean_value_enclosure
from .expr import (
    UNDEFINED,
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    eval_point,
    eval_point_mp,
    parse_expr,
    print_expr,
)
from .limits import LimitVerdict, certify_limit, numeric_probe
from .plot import BOX, GAP, LINE, Cell, PlotData, adaptive_plot
from .taylor import TaylorModel, taylor_model

__all__ = [
    "eval_interval", "enclose", "mean_value_enclosure",
    "UNDEFINED", "Add", "Const", "Div", "Expr", "Func", "Mul", "Neg", "Pow", "Sub", "Var",
    "eval_point", "eval_point_mp", "parse_expr", "print_expr",
    "LimitVerdict", "certify_limit", "numeric_probe",
    "BOX", "GAP", "LINE", "Cell", "PlotData", "adaptive_plot",
    "TaylorModel", "taylor_model",
]
