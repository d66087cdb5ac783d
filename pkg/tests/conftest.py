from __future__ import annotations

import sys

import pytest

from boundary_yangian.presentations import build_boundary, build_y_sl2, quotient_by_hp


@pytest.fixture(scope="session")
def y_sl2():
    return build_y_sl2(6)


@pytest.fixture(scope="session")
def boundary():
    return build_boundary(6)


@pytest.fixture(scope="session")
def factor(boundary):
    return quotient_by_hp(boundary)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
