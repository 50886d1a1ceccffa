from fractions import Fraction

import numpy as np
import pytest

from latexp.constructions import shipped_examples, theorem4_lattice
from latexp.lattice import FormsMatrix, lattice_from_forms

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def examples():
    return shipped_examples()


@pytest.fixture(scope="session")
def theorem4_d3():
    return theorem4_lattice(3)


@pytest.fixture
def z3():
    return lattice_from_forms(FormsMatrix.identity(3))


def random_rational_forms(d: int, rng: np.random.Generator, lo: int = -6, hi: int = 7) -> FormsMatrix:
    """Nonsingular forms with small rational entries."""
    while True:
        num = rng.integers(lo, hi, size=(d, d))
        den = rng.integers(1, 4, size=(d, d))
        rows = [[f"{num[i, j]}/{den[i, j]}" for j in range(d)] for i in range(d)]
        forms = FormsMatrix.from_rows([[Fraction(v) for v in r] for r in rows])
        if not forms.det.is_zero():
            return forms


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
