import sys
from pathlib import Path

import pytest

from rankarg import parse_formula, validate_abf

sys.path.insert(0, str(Path(__file__).parent))


def fs(*texts):
    return [parse_formula(t) for t in texts]


def make_abf(ab, gamma=()):
    return validate_abf(fs(*gamma), fs(*ab))


# knowledge bases from the worked examples
EX26 = ("p", "!p", "q")
SEC23 = ("p & !p", "q", "r", "!q | !r", "s")
SEC4 = ("p & !p", "q", "!q & r", "!q & s")
SEC52 = ("p & !p", "q", "!q & r")


@pytest.fixture
def ex26():
    return make_abf(EX26)


@pytest.fixture
def sec23():
    return make_abf(SEC23)


@pytest.fixture
def sec4():
    return make_abf(SEC4)


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
