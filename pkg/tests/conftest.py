import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

ROOT = Path(__file__).resolve().parent.parent
GEO = ROOT / "corpus" / "geo"

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=100
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def geo():
    return lambda name: GEO / name


@pytest.fixture(scope="session")
def plot_g():
    from geokernel.analysis import adaptive_plot, parse_expr
    from geokernel.numeric import Interval
    return adaptive_plot(parse_expr("sin(x)/x"), Interval(-10, 10), None, 1e-3, 24)


@pytest.fixture(scope="session")
def plot_f():
    from geokernel.analysis import adaptive_plot, parse_expr
    from geokernel.numeric import Interval
    return adaptive_plot(parse_expr("x*sin(1/x)"), Interval(-0.1, 0.1), None, 1e-3, 24)
