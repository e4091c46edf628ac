import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from cyinvariants import BasisChange, CubicForm, CurveClass, DivisorClass, InstantonSeries, LinearForm
from cyinvariants.lattice import all_sorted_triples

DATA = Path(__file__).parent / "data"

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda n: int(n.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def data_dir():
    return DATA


# -- random objects from a seeded ``random.Random`` -----------------------------

def random_cubic(rng: random.Random, rank: int, bound: int = 10) -> CubicForm:
    return CubicForm(rank, {t: rng.randint(-bound, bound) for t in all_sorted_triples(rank)})


def random_linear(rng: random.Random, rank: int, bound: int = 10) -> LinearForm:
    return LinearForm(tuple(rng.randint(-bound, bound) for _ in range(rank)))


def random_vector(rng: random.Random, cls, rank: int, bound: int = 5, nonzero: bool = False):
    while True:
        v = cls(tuple(rng.randint(-bound, bound) for _ in range(rank)))
        if not (nonzero and v.is_zero()):
            return v


def random_series(rng: random.Random, max_degree: int = 5, bound: int = 20) -> InstantonSeries:
    degrees = rng.sample(range(1, max_degree + 1), rng.randint(0, max_degree))
    return InstantonSeries({d: rng.randint(-bound, bound) for d in degrees})


def random_unimodular(rng: random.Random, rank: int, steps: int = 8) -> BasisChange:
    """Product of random elementary integer operations."""
    m = [[int(i == j) for j in range(rank)] for i in range(rank)]
    for _ in range(steps):
        op = rng.random()
        i, j = rng.sample(range(rank), 2) if rank > 1 else (0, 0)
        if rank > 1 and op < 0.6:
            f = rng.randint(-2, 2)
            m = [row[:i] + [row[i] + f * row[j]] + row[i + 1:] for row in m]
        elif rank > 1 and op < 0.8:
            for row in m:
                row[i], row[j] = row[j], row[i]
        else:
            k = rng.randrange(rank)
            for row in m:
                row[k] = -row[k]
    return BasisChange(tuple(tuple(r) for r in m))


# -- hypothesis strategies ------------------------------------------------------

ranks = st.integers(min_value=1, max_value=4)
small_ints = st.integers(min_value=-10, max_value=10)


@st.composite
def cubic_forms(draw, rank):
    return CubicForm(rank, {t: draw(small_ints) for t in all_sorted_triples(rank)})


def divisors(rank):
    return st.lists(small_ints, min_size=rank, max_size=rank).map(lambda v: DivisorClass(tuple(v)))


def curves(rank):
    return st.lists(st.integers(-4, 4), min_size=rank, max_size=rank).map(lambda v: CurveClass(tuple(v)))


def linear_forms(rank):
    return st.lists(st.integers(-60, 60), min_size=rank, max_size=rank).map(lambda v: LinearForm(tuple(v)))


instanton_series = st.dictionaries(st.integers(1, 12), st.integers(-20, 20), max_size=6).map(InstantonSeries)
