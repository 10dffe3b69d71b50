import random

import pytest

from semibound.errors import CapExceeded
from semibound.linalg import QMatrix
from semibound.semigroup import adjoin_zero, closure

ACCEPTANCE_RESULTS = []


def E(i, j, n=2):
    return QMatrix.unit(n, i, j)


def brute_closure(gens):
    """Naive fixpoint of pairwise products; independent of the BFS closure."""
    elems = set(gens)
    while True:
        new = {a * b for a in elems for b in elems} | elems
        if new == elems:
            return elems
        elems = new


def random_finite_closures(count, seed=2024, cap=64, dims=(2, 2, 3)):
    """Closures of random small integer generator sets that stay under ``cap``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice(dims)
        k = rng.choice([1, 2])
        gens = [
            QMatrix([[rng.choice([-1, 0, 0, 1]) for _ in range(n)] for _ in range(n)])
            for _ in range(k)
        ]
        try:
            out.append(closure(gens, cap=cap))
        except CapExceeded:
            continue
    return out


@pytest.fixture
def b2():
    return closure([E(0, 1), E(1, 0)])


@pytest.fixture
def sign():
    return adjoin_zero(closure([QMatrix([[-1]])]))


@pytest.fixture
def sym3():
    return closure([QMatrix([[0, -1], [1, -1]]), QMatrix([[0, -1], [-1, 0]])])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title}")
