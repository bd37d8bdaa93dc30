import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
SCENARIO_DIR = ROOT / "scenarios"

ACCEPTANCE_LINES = []


def rational(rng, lo=-9, hi=9, den=6):
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def acceptance_log():
    def record(number, description, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {description}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
