import pytest
from hypothesis import strategies as st

from nnov.terms import DiffWord

ACCEPTANCE_LINES: list[str] = []


@st.composite
def weight_minus_one_orders(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    # n - 1 derivatives dropped into n slots
    slots = draw(st.lists(st.integers(0, n - 1), min_size=n - 1, max_size=n - 1))
    orders = [0] * n
    for s in slots:
        orders[s] += 1
    return tuple(orders)


@st.composite
def weight_minus_one_words(draw, min_n=1, max_n=7, alphabet=("x",)):
    orders = draw(weight_minus_one_orders(min_n, max_n))
    gens = draw(st.lists(st.sampled_from(alphabet), min_size=len(orders), max_size=len(orders)))
    return DiffWord.from_orders(orders, gens)


@st.composite
def any_words(draw, max_n=5, max_order=4, alphabet=("x", "y", "z1")):
    n = draw(st.integers(1, max_n))
    orders = draw(st.lists(st.integers(0, max_order), min_size=n, max_size=n))
    gens = draw(st.lists(st.sampled_from(alphabet), min_size=n, max_size=n))
    return DiffWord.from_orders(orders, gens)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
