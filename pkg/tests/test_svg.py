import re

import pytest

from geokernel.analysis import adaptive_plot, parse_expr
from geokernel.construct import evaluate, load_program, parse_program
from geokernel.numeric import DisplayRounded, Interval
from geokernel.svg import SvgStyle, emit_svg


def test_witness_drawing(geo):
    svg = emit_svg(evaluate(load_program(geo("tzitzeica_witness.geo"))))
    assert svg.startswith("<?xml") or svg.startswith("<svg")
    assert svg.count("<circle") == 4
    for name in ("O", "A", "B", "C", "P", "N", "M"):
        assert f">{name}</text>" in svg
    assert svg.count("<line") >= 2     # segments ab, nm


def test_failed_objects_not_drawn():
    prog = parse_program("point A = free(0, 0)\npoint B = free(11, 0)\ncircle c = circle(A, 5)\n"
                         "circle d = circle(B, 5)\npoint P = intersect(c, d, first)\n")
    svg = emit_svg(evaluate(prog))
    assert svg.count("<circle") == 2
    assert ">P</text>" not in svg


def test_g_has_no_boxes(plot_g):
    svg = emit_svg(plot_g)
    assert "<rect" not in svg
    assert svg.count("<polyline") == 2


def test_f_has_boxes(plot_f):
    svg = emit_svg(plot_f)
    assert svg.count("<rect") == len(plot_f.boxes) > 0


def test_byte_identical(geo, plot_g):
    prog = load_program(geo("fig7.geo"))
    a = emit_svg(evaluate(prog, DisplayRounded(2)))
    b = emit_svg(evaluate(load_program(geo("fig7.geo")), DisplayRounded(2)))
    assert a == b
    assert emit_svg(plot_g) == emit_svg(plot_g)


def test_numbers_have_six_decimals(plot_g):
    svg = emit_svg(plot_g)
    nums = re.findall(r'points="([^"]+)"', svg)[0].replace(",", " ").split()
    assert all(re.fullmatch(r"-?\d+\.\d{6}", n) for n in nums)
    assert "-0.000000" not in svg


def test_style_and_type_errors():
    data = adaptive_plot(parse_expr("x"), Interval(0, 1))
    svg = emit_svg(data, SvgStyle(width=200, height=100))
    assert 'width="200"' in svg and 'height="100"' in svg
    with pytest.raises(TypeError):
        emit_svg("not a plot")
