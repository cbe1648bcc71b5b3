import pytest

from branchmod.branch import validate_pair


@pytest.fixture
def cusp():
    return validate_pair(2, [3])


@pytest.fixture
def two_pair():
    return validate_pair(4, [6, 7])


@pytest.fixture
def six_nine_ten():
    return validate_pair(6, [9, 10])


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
