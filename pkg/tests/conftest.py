import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mpendo import fixtures  # noqa: E402


@pytest.fixture(scope="session")
def f1():
    return fixtures.f1()


@pytest.fixture(scope="session")
def ext():
    return fixtures.f1_extended()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
