from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hahnfield import GroupElement, HahnSeries, example_couple, DerivationContext


def G(*xs):
    return GroupElement(Fraction(x) if isinstance(x, str) else x for x in xs)


def S(n, terms):
    """Series from {exponent tuple: coefficient}."""
    return HahnSeries(n, {GroupElement(k): v for k, v in terms.items()})


@pytest.fixture
def log2():
    return example_couple(2)


@pytest.fixture
def ctx2(log2):
    return DerivationContext(log2)


scalars = st.fractions(min_value=-9, max_value=9, max_denominator=9)


def elements(n):
    return st.lists(scalars, min_size=n, max_size=n).map(GroupElement)


def series(n, max_terms=4):
    return st.dictionaries(elements(n), scalars.filter(bool), max_size=max_terms).map(
        lambda d: HahnSeries(n, d)
    )


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
