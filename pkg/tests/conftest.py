import math

import pytest

from polypursuit.geom import PolygonEnv, pt

# hole rings listed clockwise (the loader accepts either and corrects)
SQUARE_OUTER = [(0, 0), (10, 0), (10, 10), (0, 10)]
DONUT_HOLE = [(4, 3), (4, 5), (6, 5), (6, 3)]
TWO_HOLE_OUTER = [(0, 0), (20, 0), (20, 10), (0, 10)]
TWO_HOLES = [[(4, 4), (4, 6), (6, 6), (6, 4)], [(14, 4), (14, 6), (16, 6), (16, 4)]]


@pytest.fixture
def square():
    return PolygonEnv([pt(*p) for p in SQUARE_OUTER])


@pytest.fixture
def donut():
    return PolygonEnv([pt(*p) for p in SQUARE_OUTER], [[pt(*p) for p in DONUT_HOLE]])


@pytest.fixture
def two_hole():
    return PolygonEnv([pt(*p) for p in TWO_HOLE_OUTER], [[pt(*p) for p in h] for h in TWO_HOLES])


def close(a, b, tol=1e-9):
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)
