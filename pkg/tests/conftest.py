import sys
from pathlib import Path

import pytest
from hypothesis import settings

from lfdominoes.harness import EXAMPLE_DEAL
from lfdominoes.rules import apply_move, initial_state, place

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CRITERIA: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(CRITERIA, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"criterion {name}: {CRITERIA[name]}")


@pytest.fixture
def example_deal():
    return EXAMPLE_DEAL


@pytest.fixture
def example_states():
    """States along the worked-example line, before each of the first four moves."""
    s1 = initial_state(EXAMPLE_DEAL, 1)
    s2 = apply_move(s1, place(2, 2))
    s3 = apply_move(s2, place(1, 2, 2))
    s4 = apply_move(s3, place(0, 1, 1))
    return [s1, s2, s3, s4]
