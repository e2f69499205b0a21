import numpy as np
import pytest

from matrices import ACCEPTANCE_LINES, EXAMPLE_A


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def example_a():
    return EXAMPLE_A.copy()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
