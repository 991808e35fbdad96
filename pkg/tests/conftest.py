import pytest

from flowspine.catalog import load_catalog
from flowspine.enumerate import enumerate_positive


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def abalone(catalog):
    return catalog.diagrams["1_1"]


@pytest.fixture(scope="session")
def s2xs1(catalog):
    return catalog.presentations["s2xs1-circle"]


@pytest.fixture(scope="session")
def census3():
    return enumerate_positive(3)


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    return request.config.acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
