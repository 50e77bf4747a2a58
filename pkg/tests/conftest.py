"""Shared fixtures for the lagzero test suite."""

import sys
from fractions import Fraction

import pytest

# the adaptive quadrature bisects recursively; the default interpreter
# cap is too tight once integrand frames stack on top of the recursion
sys.setrecursionlimit(10000)

from lagzero import landscape  # noqa: E402


@pytest.fixture(scope="session")
def ctx81():
    return landscape.make_context(Fraction(81, 100))


@pytest.fixture(scope="session")
def ctx80():
    return landscape.make_context(Fraction(4, 5))


@pytest.fixture(scope="session")
def ctx75():
    return landscape.make_context(Fraction(3, 4))


@pytest.fixture(scope="session")
def ctx99():
    return landscape.make_context(Fraction(99, 100))
