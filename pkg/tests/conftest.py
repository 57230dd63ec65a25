import pytest

from voacheck.fock import SpaceConfig


@pytest.fixture(scope="session")
def m1():
    return SpaceConfig(0, 12, False)


@pytest.fixture(scope="session")
def m1plus8():
    return SpaceConfig(0, 8, True)


@pytest.fixture(scope="session")
def m1plus12():
    return SpaceConfig(0, 12, True)


@pytest.fixture(scope="session")
def vl1():
    return SpaceConfig(1, 10, False)


@pytest.fixture(scope="session")
def vl2():
    return SpaceConfig(2, 12, False)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
