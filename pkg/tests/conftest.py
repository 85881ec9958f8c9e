import random
from fractions import Fraction
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from nichols_lift.braiding import BraidingMatrix
from nichols_lift.scalars import make_field, root

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rand_elem(F, rng, span=5):
    """Random element with small integer-over-small-denominator coordinates."""
    den = rng.randint(1, 4)
    return F.from_coords(rng.choices(range(-span, span + 1), k=F.degree)) * Fraction(1, den)


def rand_root(F, rng):
    return root(F, rng.randrange(F.order)) * rng.choice([1, -1])


def rand_matrix(F, theta, rng):
    return BraidingMatrix([[rand_root(F, rng) for _ in range(theta)] for _ in range(theta)], F)


def matrix(L, rows):
    """Matrix from exponents of z: an int k means z^k, the string '-' prefix negates."""
    F = make_field(L)
    out = []
    for row in rows:
        r = []
        for k in row:
            if isinstance(k, str):
                r.append(-root(F, int(k[1:] or 0)))
            else:
                r.append(root(F, k))
        out.append(r)
    return BraidingMatrix(out, F)


field_orders = st.integers(min_value=1, max_value=24)


@st.composite
def elems(draw, F, nonzero=False):
    coords = [draw(st.fractions(min_value=-6, max_value=6, max_denominator=5)) for _ in range(F.degree)]
    e = F.from_coords(coords)
    if nonzero and e.is_zero():
        e = F.one()
    return e


@pytest.fixture
def rng():
    return random.Random(20240611)


# -- acceptance reporting --------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


@contextmanager
def acceptance(number, title, limit):
    """Time the block, record one PASS/FAIL line, and enforce the time limit."""
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        verdict = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"{verdict}  criterion {number:>2}  {title}  ({elapsed:.2f} s, limit {limit:g} s)"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert elapsed < limit, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
