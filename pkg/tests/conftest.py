import sys

import numpy as np
import pytest

from hardy_forge.circle import CircleGrid


@pytest.fixture
def grid():
    return CircleGrid(1024)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        lines.extend(getattr(mod, "ACCEPTANCE_LINES", []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(lines), key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
