import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from subfield_codes.field import extension_field  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def fields():
    "every (q, m) context used by the small exhaustive suites"
    return {(q, m): extension_field(q, m) for q in (2, 3, 4) for m in range(1, 7)
            if q**m <= 4096}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
