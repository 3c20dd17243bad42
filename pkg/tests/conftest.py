from __future__ import annotations

import pytest

from revsec.function import BooleanFunction, seeded_suite

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def suite() -> list[BooleanFunction]:
    return seeded_suite()


@pytest.fixture(scope="session")
def two_input_functions() -> list[BooleanFunction]:
    return [BooleanFunction(2, 1, tuple((k >> a) & 1 for a in range(4))) for k in range(16)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
