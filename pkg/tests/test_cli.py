import json
import subprocess
import sys

import pytest

from geokernel.cli import RunConfig, build_parser, main
from geokernel.numeric import Exact


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_defaults():
    cfg = RunConfig()
    assert cfg.mode == Exact and cfg.decimals == 2 and cfg.tolerance == 0.25
    assert cfg.plot_tol == 1e-3 and cfg.max_depth == 24
    ns = build_parser().parse_args(["check", "x.geo"])
    assert RunConfig.from_args(ns) == RunConfig()


def test_check_witness(capsys, geo):
    code, out, _ = run(capsys, "check", geo("tzitzeica_witness.geo"), "--theorem", "tzitzeica",
                       "--mode", "exact")
    assert code == 0
    assert out.strip() == "VerifiedExact: circum r² = 25 = r²"


def test_check_printed_protocol_display(capsys, geo):
    code, out, _ = run(capsys, "check", geo("fig7.geo"), "--theorem", "tzitzeica", "--mode", "display",
                       "--decimals", "2", "--tolerance", "0.25")
    assert code == 0
    assert out.startswith("VerifiedWithin 0.25: residual ≤ ")


def test_check_json(capsys, geo):
    code, out, _ = run(capsys, "check", geo("tzitzeica_witness.geo"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "verdict/1" and doc["outcome"] == "VerifiedExact"


def test_check_falsified(capsys, geo):
    code, out, _ = run(capsys, "check", geo("tzitzeica_falsified.geo"))
    assert code == 1 and out.startswith("Falsified")


def test_check_rhombus(capsys, geo):
    code, out, _ = run(capsys, "check", geo("rhombus.geo"), "--theorem", "rhombus")
    assert code == 0 and "all four sides² = 25" in out
    code, out, _ = run(capsys, "check", geo("disjoint.geo"), "--theorem", "rhombus")
    assert code == 3 and out.startswith("Degenerate")


def test_shape_mismatch_is_degenerate_input(capsys, geo):
    code, out, err = run(capsys, "check", geo("rhombus.geo"))
    assert code == 3 and out == "" and "ShapeMismatch" in err


def test_protocol_and_deviation(capsys, geo):
    code, out, _ = run(capsys, "protocol", geo("fig7.geo"), "--mode", "display")
    assert code == 0 and out.splitlines()[1] == "A = (-2.97, 2.45)"
    code, out, _ = run(capsys, "protocol", geo("fig7.geo"), "--json")
    assert code == 0 and json.loads(out)["schema"] == "trace/1"
    code, out, _ = run(capsys, "deviation", geo("fig7.geo"), "--decimals", "2")
    assert code == 0 and "max deviation" in out
    code, out, _ = run(capsys, "deviation", geo("fig7.geo"), "--json")
    assert code == 0 and "max_deviation" in json.loads(out)


def test_sweep(capsys, geo):
    code, out, _ = run(capsys, "sweep", geo("tzitzeica_witness.geo"), "--target", "A",
                       "--path", "arc:0,0:5:0:1", "--steps", "5", "--check", "tzitzeica",
                       "--check", "defined")
    assert code == 0 and "tzitzeica: 5/5 passed" in out
    code, out, _ = run(capsys, "sweep", geo("tzitzeica_witness.geo"), "--target", "B",
                       "--path", "line:-3,4:9,4", "--steps", "3")
    assert code == 1 and "IdenticalCircles" in out
    code, _, err = run(capsys, "sweep", geo("tzitzeica_witness.geo"), "--target", "P",
                       "--path", "line:0,0:1,1")
    assert code == 4 and "NotFree" in err
    code, _, _ = run(capsys, "sweep", geo("tzitzeica_witness.geo"), "--target", "Z",
                     "--path", "line:0,0:1,1")
    assert code == 4
    code, _, _ = run(capsys, "sweep", geo("tzitzeica_witness.geo"), "--target", "A",
                     "--path", "zigzag")
    assert code == 4


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "x*sin(1/x)", "--at", "0")
    assert code == 0 and out.splitlines()[0] == "Certified: 0 (squeeze: |sin|≤1)"
    assert out.splitlines()[1].startswith("certificate: R1")
    code, out, _ = run(capsys, "limit", "sin(x)/x", "--at", "0")
    assert code == 0 and out.startswith("Certified: 1")
    code, out, _ = run(capsys, "limit", "sin(1/x)", "--at", "0+")
    assert code == 1 and out.startswith("NoLimitCertified")
    code, out, _ = run(capsys, "limit", "(1+1/x)^x", "--at", "inf")
    assert code == 2 and out.startswith("NumericEstimate: 2.71828")
    code, out, _ = run(capsys, "limit", "abs(x)/x", "--at", "0")
    assert code == 2 and out.startswith("Inconclusive")
    code, out, _ = run(capsys, "limit", "ln(x)", "--at", "0-")
    assert code == 3 and out.startswith("Undefined")
    code, out, _ = run(capsys, "limit", "sin(x)/x", "--json")
    assert code == 0 and json.loads(out)["value"] == "1"


def test_parse_errors(capsys, tmp_path):
    code, _, err = run(capsys, "limit", "sin(x")
    assert code == 4 and "column 6" in err
    bad = tmp_path / "bad.geo"
    bad.write_text("point A = free(0, 0)\npoint A = free(1, 1)\n")
    code, _, err = run(capsys, "protocol", bad)
    assert code == 4 and "DuplicateName" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "bogus")[0] == 4
    assert run(capsys)[0] == 4
    assert run(capsys, "limit", "x", "--at", "7")[0] == 4
    assert run(capsys, "plot", "x", "--domain", "3:1")[0] == 4
    assert run(capsys, "protocol", tmp_path / "missing.geo")[0] == 4
    assert run(capsys, "check", "x.geo", "--mode", "approx")[0] == 4


def test_internal_limit(capsys, geo):
    code, _, err = run(capsys, "protocol", geo("deep_tower.geo"))
    assert code == 5 and "TowerDepthExceeded" in err
    code, _, _ = run(capsys, "--max-tower-depth", "0", "protocol", geo("rhombus.geo"))
    assert code == 0     # rational throughout
    code, _, _ = run(capsys, "--max-tower-depth", "0", "protocol", geo("fig7.geo"))
    assert code == 5


def test_plot(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "sin(x)/x", "--domain", "-10:10")
    assert code == 0 and "1 gap, 0 box" in out and len(out.splitlines()) == 2
    svg = tmp_path / "g.svg"
    code, out, _ = run(capsys, "plot", "x*sin(1/x)", "--domain", "-0.1:0.1", "--max-depth", "14",
                       "--svg", svg)
    assert code == 0 and "<rect" in svg.read_text()
    code, out, _ = run(capsys, "plot", "1", "--domain", "0:1", "--json")
    assert code == 0 and json.loads(out)["schema"] == "plot/1"
    code, out, _ = run(capsys, "plot", "x^2", "--domain", "0:1", "--svg", "-")
    assert code == 0 and out.lstrip().startswith("<")


def test_draw(capsys, geo, tmp_path):
    code, out, _ = run(capsys, "draw", geo("tzitzeica_witness.geo"))
    assert code == 0 and out.count("<circle") == 4
    code, out, err = run(capsys, "draw", geo("disjoint.geo"), "--svg", tmp_path / "d.svg")
    assert code == 0 and "not drawn" in err


def test_color(capsys, monkeypatch):
    monkeypatch.setenv("GEO_COLOR", "1")
    assert "\033[" in run(capsys, "bogus")[2]
    monkeypatch.setenv("GEO_COLOR", "0")
    assert "\033[" not in run(capsys, "bogus")[2]


def test_module_entry_point(geo):
    proc = subprocess.run([sys.executable, "-m", "geokernel", "limit", "sin(x)/x"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("Certified: 1")
