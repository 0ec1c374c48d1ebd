from fractions import Fraction

import pytest
from hypothesis import strategies as st

from lipfree.metric import PROFILES, random_space, validate


@pytest.fixture
def two_point():
    # base "0", one other point at distance 1
    return validate([[0, 1], [1, 0]], 0, ["0", "p"])


@pytest.fixture
def path_metric():
    return validate([[0, 1, 2], [1, 0, 1], [2, 1, 0]], 2, ["p", "z", "q"])


@pytest.fixture
def triangle():
    return validate([[0, 1, 1], [1, 0, 1], [1, 1, 0]], 0, ["a", "b", "c"])


spaces = st.builds(
    random_space,
    n=st.integers(2, 7),
    profile=st.sampled_from(PROFILES),
    seed=st.integers(0, 10**6),
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
unit_eps = st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
