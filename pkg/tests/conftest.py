import pytest
from mpmath import mp, mpf


@pytest.fixture
def dps30():
    with mp.workdps(30):
        yield


def close(x, y, tol, dps=60):
    """|x - y| < tol at a stated working precision."""
    with mp.workdps(dps):
        return abs(mpf(x) - mpf(y)) < mpf(tol)


def rel_close(x, y, tol, dps=60):
    with mp.workdps(dps):
        y = mpf(y)
        return abs(mpf(x) - y) < mpf(tol) * abs(y)
