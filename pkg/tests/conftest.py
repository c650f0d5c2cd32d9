import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ovlab.tensors import Sym2


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def sym2s(draw, n):
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            entries[i][j] = entries[j][i] = draw(small_rationals)
    return Sym2.from_array(entries)


@st.composite
def metrics(draw, n):
    """Positive definite L L^T with small integer L."""
    L = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            L[i][j] = draw(st.integers(1, 3)) if i == j else draw(st.integers(-2, 2))
    return Sym2.from_array([[sum(L[i][k] * L[j][k] for k in range(n)) for j in range(n)]
                            for i in range(n)])


@pytest.fixture
def rng():
    return random.Random("ovlab-tests")


def frac(p, q=1):
    return Fraction(p, q)


_CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion."""
    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])
