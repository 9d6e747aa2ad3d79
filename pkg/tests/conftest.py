import re

import pytest

from nhqa.model import make_params
from nhqa.schedule import make_schedule

# lines recorded by the acceptance suite, echoed at the end of the session
ACCEPTANCE_LINES = []


def _criterion_key(line):
    tag = line.split()[2].rstrip(":")
    return int(re.match(r"\d+", tag).group()), tag


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=_criterion_key):
        terminalreporter.write_line(line)


@pytest.fixture
def fig1_params():
    return make_params(2.0, 0.0, 1.5e4, 40)


@pytest.fixture
def small_linear():
    p = make_params(2.0, 0.01, 50.0, 3)
    return p, make_schedule("linear", p)
