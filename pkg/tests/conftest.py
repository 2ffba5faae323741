import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ttg.dsl import load  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"
FIXTURE_NAMES = ("P1", "P2", "P3", "P4")


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.ttg"


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_name(request):
    return request.param


@pytest.fixture
def P1():
    return load(fixture_path("P1"))


@pytest.fixture
def P2():
    return load(fixture_path("P2"))


@pytest.fixture
def P3():
    return load(fixture_path("P3"))


@pytest.fixture
def P4():
    return load(fixture_path("P4"))


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
