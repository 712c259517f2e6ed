import pytest

from primelab.sieve_core import build_tables

import oracles


@pytest.fixture(scope="session")
def small():
    return build_tables(20_000)


@pytest.fixture(scope="session")
def medium():
    return build_tables(100_010)


@pytest.fixture(scope="session")
def big():
    # covers 4x + 1 for the generator scan at x = 10^6
    return build_tables(4_000_001)


def pytest_terminal_summary(terminalreporter):
    if oracles.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in oracles.ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
