import random
from fractions import Fraction

import pytest

from fourinv.lattice import Lattice
from fourinv.manifold import FourManifold, example_classes, example_xqn

# the acceptance module appends (criterion, passed, seconds, note) here
ACCEPTANCE_LINES = []


def e8_negative() -> Lattice:
    """−E8: negated Cartan matrix of E8 (Bourbaki labelling)."""
    edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in edges:
        g[a][b] = g[b][a] = 1
    return Lattice(tuple(tuple(r) for r in g))


def k3_lattice() -> Lattice:
    h = Lattice.hyperbolic()
    e8 = e8_negative()
    return h.direct_sum(h).direct_sum(h).direct_sum(e8).direct_sum(e8)


@pytest.fixture(scope="session")
def k3():
    lat = k3_lattice()
    return FourManifold(lat, {lat.zero(): 1})


@pytest.fixture(scope="session")
def x22():
    return example_xqn(2, 2), example_classes(2, 2)


def rand_h(rng: random.Random, rank: int):
    return tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rank))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, secs, note in ACCEPTANCE_LINES:
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  criterion {crit}: {note} ({secs:.2f}s)")
