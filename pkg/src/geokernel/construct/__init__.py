"""The construction language: programs, evaluation, reports and sweeps."""

from .evaluate import OK, EvalTrace, ObjectResult, components, evaluate, reported
from .program import (
    CONSTRUCTORS,
    ConstructionProgram,
    Ref,
    Step,
    format_number,
    load_program,
    parse_program,
    print_program,
)
from .report import (
    DeviationReport,
    DeviationRow,
    deviation_json,
    deviation_report,
    format_deviation,
    protocol_report,
    trace_json,
    trace_to_dict,
)
from .sweep import ArcPath, LinePath, SweepReport, SweepStep, parse_path, perturb_sweep

__all__ = [
    "OK", "EvalTrace", "ObjectResult", "components", "evaluate", "reported",
    "CONSTRUCTORS", "ConstructionProgram", "Ref", "Step", "format_number", "load_program",
    "parse_program", "print_program",
    "DeviationReport", "DeviationRow", "deviation_json", "deviation_report", "format_deviation",
    "protocol_report", "trace_json", "trace_to_dict",
    "ArcPath", "LinePath", "SweepReport", "SweepStep", "parse_path", "perturb_sweep",
]
