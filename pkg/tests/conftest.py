import pytest

from mosg.validation import magnetic_reference, optical_reference

ACCEPTANCE_LINES = []


@pytest.fixture
def magnetic():
    return magnetic_reference()


@pytest.fixture
def optical():
    return optical_reference()


@pytest.fixture
def record_criterion():
    def _record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
