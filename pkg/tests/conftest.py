import random
from fractions import Fraction

import pytest

from ulcvol.geomcore import affine_rank, make_body

ACCEPTANCE_LINES = []


def pascal_row(n):
    """Binomial row by the Pascal recurrence, independent of math.comb."""
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def hull_2d(points):
    """Andrew's monotone chain; returns CCW extreme points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace(poly):
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        s += x0 * y1 - x1 * y0
    return abs(s) / 2


def random_body(rng, dim, npts=None, lo=-4, hi=4, denom=1):
    """Random full-dimensional body with small rational coordinates."""
    while True:
        k = npts or rng.randint(dim + 1, dim + 5)
        pts = [[Fraction(rng.randint(lo, hi), rng.randint(1, denom)) for _ in range(dim)]
               for _ in range(k)]
        body = make_body(dim, pts)
        if affine_rank(body.vertices) == dim:
            return body


def random_positive_ulc_by_rejection(rng, n, hi=30):
    """Positive ULC(n) sequence by rejection sampling, not via the simplex formula."""
    from ulcvol.seqcore import is_ulc

    while True:
        a = tuple(Fraction(rng.randint(1, hi)) for _ in range(n + 1))
        if is_ulc(a, n).holds:
            return a


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
