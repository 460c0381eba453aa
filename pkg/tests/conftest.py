import sys
from pathlib import Path

import pytest

from semitheta.core import read_table

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def example1():
    return read_table(FIXTURES / "example1.tbl")


@pytest.fixture(scope="session")
def table2():
    return read_table(FIXTURES / "table2.tbl")


@pytest.fixture(scope="session")
def nilpotent3():
    return read_table(FIXTURES / "nilpotent3.tbl")


@pytest.fixture(scope="session")
def leftzero2():
    return read_table(FIXTURES / "leftzero2.tbl")


@pytest.fixture(scope="session")
def rightzero2():
    return read_table(FIXTURES / "rightzero2.tbl")


@pytest.fixture(scope="session")
def census():
    """Labeled semigroups of orders 1..3, keyed by order."""
    from semitheta.census import enumerate_labeled

    return {n: list(enumerate_labeled(n)) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def census4():
    from semitheta.census import enumerate_labeled

    return list(enumerate_labeled(4))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
