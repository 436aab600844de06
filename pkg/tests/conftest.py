from fractions import Fraction

import pytest

from fuzzydyn.fuzzy import StepFuzzySet
from fuzzydyn.space import CompactSet, FiniteMetric


@pytest.fixture
def ab():
    """Two points at distance 1."""
    return FiniteMetric(("a", "b"), ((0, 1), (1, 0)))


@pytest.fixture
def step_ab(ab):
    """u(a) = 1, u(b) = 1/2."""
    a, b = ab.point("a"), ab.point("b")
    return StepFuzzySet((Fraction(1, 2), Fraction(1)), (CompactSet([a, b]), CompactSet([a])))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from test_acceptance import ACCEPTANCE_KEY

    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
