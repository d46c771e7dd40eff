import pathlib

import pytest

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent

# Verdict lines collected by tests/test_acceptance.py; echoed after the run
# so they are visible even with output capture on.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def acceptance_report() -> list[str]:
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
