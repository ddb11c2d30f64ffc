import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from smoothbound.acceptance import shared_table  # noqa: E402


@pytest.fixture(scope="session")
def table():
    return shared_table()


@pytest.fixture(scope="session")
def small_table():
    return shared_table(20_000)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in sorted(RESULTS, key=lambda r: r.number):
            terminalreporter.write_line(r.line())
