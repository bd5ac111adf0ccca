import json
import pytest
from hypothesis import given, settings, strategies as st

from geokernel.analysis import GAP, LINE, UNDEFINED, adaptive_plot, eval_point, parse_expr
from geokernel.numeric import Interval

from exprgen import exprs
from oracles import mp_eval


def assert_tiles(data):
    cells = data.cells
    assert cells[0].x0 == data.domain.lo and cells[-1].x1 == data.domain.hi
    for a, b in zip(cells, cells[1:]):
        assert a.x1 == b.x0 and a.x0 < a.x1


def test_g_single_gap_no_boxes(plot_g):
    assert_tiles(plot_g)
    assert len(plot_g.gaps) == 1
    a, b = plot_g.gaps[0]
    assert a <= 0 <= b and b - a < 1e-5
    assert plot_g.boxes == ()
    assert len(plot_g.polylines) == 2


def test_g_polylines_match_oracle(plot_g):
    for line in plot_g.polylines:
        for x, y in line:
            want = mp_eval("sin(x)/x", x)
            assert abs(y - float(want)) < 1e-3


def test_f_boxes_follow_envelope(plot_f):
    assert_tiles(plot_f)
    assert plot_f.boxes
    for box in plot_f.boxes:
        m = max(abs(box.x0), abs(box.x1))
        assert box.hi - box.lo <= 2 * m + 1e-3
    assert not plot_f.gaps or all(b - a < 1e-6 for a, b in plot_f.gaps)


def test_constant():
    data = adaptive_plot(parse_expr("1"), Interval(0, 1))
    assert len(data.cells) == 1 and data.cells[0].kind == LINE
    assert data.polylines == (((0.0, 1.0), (1.0, 1.0)),)
    assert data.gaps == () and data.boxes == ()


def test_undefined_stretch_is_one_gap():
    data = adaptive_plot(parse_expr("sqrt(x)"), Interval(-4, 4), tol=1e-2, max_depth=14)
    assert_tiles(data)
    assert len(data.gaps) == 1
    a, b = data.gaps[0]
    assert a == -4 and -1e-3 < b <= 0


def test_clip_turns_blowup_into_boxes():
    data = adaptive_plot(parse_expr("1/x"), Interval(0.001, 1), Interval(-5, 5), 1e-2, 16)
    assert_tiles(data)
    assert data.boxes and all(b.lo > 5 for b in data.boxes)


def test_json_schema_and_determinism(plot_g):
    text = plot_g.to_json()
    assert text == adaptive_plot(parse_expr("sin(x)/x"), Interval(-10, 10)).to_json()
    doc = json.loads(text)
    assert doc["schema"] == "plot/1"
    assert set(doc) >= {"polylines", "gaps", "boxes", "domain"}


def test_bad_arguments():
    with pytest.raises(ValueError):
        adaptive_plot(parse_expr("x"), Interval(0, 1), tol=0)
    with pytest.raises(ValueError):
        adaptive_plot(parse_expr("x"), Interval(1, 1))


@settings(max_examples=40)
@given(exprs, st.floats(-5, 5), st.floats(0.01, 5))
def test_cells_tile_domain(e, a, w):
    data = adaptive_plot(e, Interval(a, a + w), Interval(-10, 10), 1e-2, 8)
    assert_tiles(data)
    for c in data.cells:
        if c.kind == LINE:
            assert c.hi - c.lo <= 1e-2
            for x in (c.x0, c.x1):
                v = eval_point(e, x)
                assert v is not UNDEFINED and c.lo <= v <= c.hi
        if c.kind == GAP:
            assert c.lo is None and c.hi is None
