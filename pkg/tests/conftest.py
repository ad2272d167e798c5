import numpy as np
import pytest
from hypothesis import settings

from byzfusion import SensorOperatingPoint

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

SENSORS = [
    SensorOperatingPoint(0.6, 0.4),
    SensorOperatingPoint(0.8, 0.2),
    SensorOperatingPoint(0.9, 0.1),
    SensorOperatingPoint(0.95, 0.3),
    SensorOperatingPoint(0.55, 0.05),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=SENSORS, ids=lambda s: f"pd{s.pd}-pf{s.pf}")
def sensor(request):
    return request.param


ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LOG:
        terminalreporter.write_line(line)
