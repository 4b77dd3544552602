from pathlib import Path

import pytest

from finyoneda.corpus import c2, commutative_square, m2, z2, z3
from finyoneda.fincat import discrete_category

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def C2():
    return c2()


@pytest.fixture
def Z2():
    return z2()


@pytest.fixture
def M2():
    return m2()


@pytest.fixture
def Z3():
    return z3()


@pytest.fixture
def square():
    return commutative_square()


@pytest.fixture
def point():
    return discrete_category(["X"])


@pytest.fixture
def fixtures_dir():
    return FIXTURES


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, title, ok, detail=""):
        _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
