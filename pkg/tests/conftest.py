import numpy as np
import pytest
from hypothesis import settings

from asdh import instantiate, solve
from asdh.problems import CATALOG, required_ids

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


def suite_problem(pid, n=1000):
    return instantiate(pid, n if CATALOG[pid].scale == "large" else None)


@pytest.fixture(scope="session")
def suite_runs():
    """Traced default-config runs of every required problem at n = 1000."""
    return {pid: solve(suite_problem(pid), record_trace=True) for pid in required_ids()}


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


# -- acceptance reporting -----------------------------------------------------

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion covered by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if hasattr(rep, "wasxfail"):
            verdict = "FAIL (expected, see reason)"
        else:
            verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _CRITERIA.append((marker.args[0], verdict))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _CRITERIA:
        terminalreporter.write_line(f"{verdict:<5}  {name}")
