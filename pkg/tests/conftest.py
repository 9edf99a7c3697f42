import logging

import numpy as np
import pytest

_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line, then assert it.

    Usage: ``criterion(3, "resonant 2pi reference", ok, "detail")``.
    """
    results = request.config.stash[_RESULTS]

    def record(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        results.append((number, line))
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(results, key=lambda x: x[0]):
        terminalreporter.write_line(line)


@pytest.fixture(autouse=True)
def _quiet_step_warnings():
    # the dt > 1% tau warning is expected for the literal propagation table
    logging.getLogger("chirped_inversion").setLevel(logging.ERROR)
    yield
    logging.getLogger("chirped_inversion").setLevel(logging.NOTSET)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

