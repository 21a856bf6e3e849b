from fractions import Fraction as F

import pytest

from tropelim.cheb import ChebDataset
from tropelim.polynomial import Problem
from tropelim.semifield import MAX_PLUS

# Chebyshev example 1: four residuals, three parameters on [0, 1]^3
EX1_X = [[3, -1, 2], [1, -2, 1], [2, 3, -1], [0, 4, -1]]
EX1_Y = [2, 1, -1, 0]

# Chebyshev example 2: ten residuals, three parameters on [-1/4, 1/4]^3
EX2_X = [[3, -1, 2], [1, 2, -2], [2, -3, 1], [0, 2, -1], [1, 2, -1],
         [3, 1, 0], [1, 1, -1], [1, 1, 2], [0, 3, 1], [2, 1, 0]]
EX2_Y = [-2, 1, -1, 0, -1, 1, -2, 0, -1, -3]


def ex1_dataset() -> ChebDataset:
    return ChebDataset.make(EX1_X, EX1_Y, [0, 0, 0], [1, 1, 1])


def ex2_dataset(k: int = 10) -> ChebDataset:
    q = F(1, 4)
    return ChebDataset.make(EX2_X[:k], EX2_Y[:k], [-q] * 3, [q] * 3)


def symmetric_problem() -> Problem:
    """max(x1 - x2, x2 - x1) on [-1, 1]^2."""
    return Problem.make(MAX_PLUS, [(0, [1, -1]), (0, [-1, 1])], [-1, -1], [1, 1])


@pytest.fixture
def ex1():
    return ex1_dataset()


@pytest.fixture
def symmetric():
    return symmetric_problem()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[name])
