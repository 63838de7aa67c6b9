import random

import pytest
from hypothesis import HealthCheck, settings

from pcnsolve import _backend
from pcnsolve.graph import random_connected_graph, random_graph

# the backend fixture patches a module attribute once per test, which is
# safe to share across hypothesis examples
settings.register_profile("pcn", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("pcn")

BACKENDS = sorted(_backend.available())

# PASS/FAIL lines collected by the acceptance module, shown after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per importable kernel."""
    module = _backend.available()[request.param]
    monkeypatch.setattr(_backend, "kernel", module)
    return module


def random_graphs(count, n_min, n_max, seed, connected=False):
    rng = random.Random(seed)
    make = random_connected_graph if connected else random_graph
    out = []
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        out.append(make(n, rng.uniform(0.1, 0.6), rng))
    return out
