from fractions import Fraction

import pytest

from geokernel.construct import ArcPath, LinePath, evaluate, load_program, parse_path, perturb_sweep
from geokernel.errors import NotFree, UnknownObject


@pytest.fixture
def witness(geo):
    return load_program(geo("tzitzeica_witness.geo"))


def test_rotation_along_constraint_circle(witness):
    rep = perturb_sweep(witness, "A", "arc:0,0:5:0:1", 100, ("tzitzeica", "congruence"))
    assert rep.summary() == {"tzitzeica": (100, 100), "congruence": (100, 100)}
    assert rep.all_passed
    # every step stays rational: A is a rational point of the radius-5 circle
    for s in rep.steps:
        x, y = s.point
        assert x * x + y * y == 25


def test_collapse_at_midpoint(witness):
    rep = perturb_sweep(witness, "B", "line:-3,4:9,4", 3)
    assert [s.status for s in rep.steps] == ["ok", "IdenticalCircles", "ok"]
    assert rep.passes("defined") == 2
    assert not rep.all_passed


def test_single_step_is_plain_evaluation(witness):
    rep = perturb_sweep(witness, "A", "line:3,4:10,10", 1)
    assert rep.steps[0].param == 0
    assert rep.steps[0].trace == evaluate(witness)


def test_parallel_matches_sequential(witness):
    a = perturb_sweep(witness, "A", "arc:0,0:5:-1:1", 24, ("tzitzeica",), workers=1)
    b = perturb_sweep(witness, "A", "arc:0,0:5:-1:1", 24, ("tzitzeica",), workers=4)
    assert a.steps == b.steps
    assert [s.trace for s in a.steps] == [s.trace for s in b.steps]
    assert a.format() == b.format()


def test_errors(witness):
    with pytest.raises(UnknownObject):
        perturb_sweep(witness, "Z", "line:0,0:1,1", 3)
    with pytest.raises(NotFree):
        perturb_sweep(witness, "P", "line:0,0:1,1", 3)
    with pytest.raises(ValueError):
        perturb_sweep(witness, "A", "line:0,0:1,1", 0)
    with pytest.raises(ValueError):
        perturb_sweep(witness, "A", "line:0,0:1,1", 3, ("bogus",))


def test_parse_path():
    assert parse_path("line:0,0:1/2,3") == LinePath((0, 0), (Fraction(1, 2), 3))
    arc = parse_path("arc:1,2:5:0:1/2")
    assert arc == ArcPath((1, 2), 5, 0, Fraction(1, 2))
    assert arc.at(1) == (4, 6)
    assert str(arc) == "arc:1,2:5:0:0.5"
    for bad in ("line:0,0", "arc:0,0:-1:0:1", "spiral:0,0:1", "line:a,b:1,1"):
        with pytest.raises(ValueError):
            parse_path(bad)
