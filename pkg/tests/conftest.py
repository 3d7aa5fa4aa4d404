import pytest
from hypothesis import settings
from mpmath import mp

settings.register_profile("mopz", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("mopz")


@pytest.fixture(autouse=True)
def session_bits():
    saved = mp.prec
    mp.prec = 192
    yield
    mp.prec = saved


ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per criterion; printed again in the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
