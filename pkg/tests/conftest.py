import random

import pytest

from splitkummer.edwards import EdwardsCurve

BIG_PRIME = 2**61 - 1  # Mersenne prime; d = 3 is a non-square


@pytest.fixture(scope="session")
def E13():
    return EdwardsCurve(13, 5)


@pytest.fixture(scope="session")
def E101():
    return EdwardsCurve(101, 2)


@pytest.fixture(scope="session")
def E13_square():
    """d = 3 is a square mod 13: the curve has points at infinity."""
    return EdwardsCurve(13, 3)


@pytest.fixture(scope="session")
def E101_square():
    return EdwardsCurve(101, 4)


@pytest.fixture(scope="session")
def Ebig():
    return EdwardsCurve(BIG_PRIME, 3)


@pytest.fixture
def rng():
    return random.Random(20261015)


_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
