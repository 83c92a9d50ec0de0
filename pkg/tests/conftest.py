import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from otto_refrigerator.constants import MICROKELVIN, MICROKELVIN_ENERGY  # noqa: E402
from otto_refrigerator.otto import WorkingMediumConfig  # noqa: E402

UK = MICROKELVIN
UK_E = MICROKELVIN_ENERGY

ACCEPTANCE_LINES = []


@pytest.fixture
def paper_wm():
    """E_c/k_B = 2 uK, E_h/k_B = 4 uK, 10^4 WM atoms."""
    return WorkingMediumConfig(10_000, 2 * UK_E, 4 * UK_E)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
