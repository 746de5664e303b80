import os

import pytest

from sawlab import SearchPlan, count_polygons, count_saws
from sawlab import oracle


@pytest.fixture(scope="session")
def saw12():
    return count_saws(12)


@pytest.fixture(scope="session")
def oracle12():
    return oracle.count_saws(12)


@pytest.fixture(scope="session")
def polygons14():
    return count_polygons(14)


@pytest.fixture(scope="session")
def plan():
    return SearchPlan(worker_count=int(os.environ.get("SAWLAB_THREADS", "1")))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
