import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from symcenter import casebook  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

QUADRATIC = casebook.load_case("quadratic").spec
CUBIC = casebook.load_case("cubic_homogeneous").spec


@pytest.fixture
def quadratic():
    return QUADRATIC


@pytest.fixture
def cubic():
    return CUBIC


# acceptance criteria report: name -> (passed, seconds, note)
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda n: int(n.split()[1])):
        ok, secs, note = ACCEPTANCE[name]
        line = f"{name}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s)"
        terminalreporter.write_line(line + (f"  {note}" if note else ""))
