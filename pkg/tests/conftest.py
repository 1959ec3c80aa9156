import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from adica.language import DirectiveSequence  # noqa: E402
from adica.words import Morphism  # noqa: E402

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def data():
    return DATA


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def fib():
    return Morphism.from_rules({"a": "ab", "b": "a"}, name="fib")


@pytest.fixture
def zeta():
    return Morphism.from_rules({"a": "aab", "b": "ab"}, name="zeta")


@pytest.fixture
def twopoint():
    return Morphism.from_rules({"a": "ab", "b": "ab"}, name="twopoint")


@pytest.fixture
def odometer():
    return Morphism.from_rules({"0": "00"}, name="odometer")


@pytest.fixture
def fib_dir(fib):
    return DirectiveSequence.stationary(fib, "a", 40)


@pytest.fixture
def zeta_dir(zeta):
    return DirectiveSequence.stationary(zeta, "a", 40)


ACCEPTANCE_LINES = []


class Criterion:
    """Times one acceptance criterion and records a PASS/FAIL line."""

    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None
        note = ""
        if ok and self.limit is not None and elapsed > self.limit:
            ok = False
            note = f" over the {self.limit:g} s limit"
        line = f"criterion {self.number:>2}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s{note}) {self.title}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc_type is None and not ok:
            raise AssertionError(line)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
