from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fsmcov import fixtures  # noqa: E402

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def diamond():
    return fixtures.DIAMOND.graph


@pytest.fixture
def selfloop():
    return fixtures.SELFLOOP.graph


@pytest.fixture
def triple():
    return fixtures.TRIPLE.graph


@pytest.fixture
def twoloops():
    return fixtures.TWOLOOPS.graph


@pytest.fixture
def oneloop():
    return fixtures.ONELOOP.graph


@pytest.fixture
def wgraph():
    return fixtures.WGRAPH.graph
