import pytest

# (criterion, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_LOG = []


@pytest.fixture
def acceptance():
    return ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LOG:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
