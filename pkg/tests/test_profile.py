import math

import numpy as np
import pytest
from scipy.stats import poisson as sp_poisson

from propamp import (
    CountVector,
    Fingerprint,
    check_tail_bounds,
    falling_factorial,
    fingerprint,
    poisson_tail,
)

# Grid from the concentration-bound oracle suite.
TAIL_GRID_MU = (0.5, 1.0, 5.0, 20.0, 100.0)
TAIL_GRID_DELTA = (0.1, 0.5, 0.9, 2.0, 5.0)


def test_fingerprint_examples():
    assert fingerprint(np.array([2, 1, 1, 0])).phi == {1: 2, 2: 1}
    assert fingerprint(np.zeros(4, dtype=int)).phi == {}
    assert fingerprint(np.array([5, 5, 5])).phi == {5: 3}


def test_fingerprint_roundtrip():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        k = int(rng.integers(1, 40))
        counts = rng.integers(0, 12, size=k)
        cv = CountVector(counts=counts)
        fp = fingerprint(cv)
        assert fp.total == cv.total
        assert all(j >= 1 and c >= 1 for j, c in fp.phi.items())


def test_count_vector_validation():
    with pytest.raises(ValueError):
        CountVector(counts=np.array([1, -2]))
    with pytest.raises(ValueError):
        CountVector(counts=np.array([1, 2]), total=5)
    assert CountVector(counts=np.array([1, 2])).total == 3


def test_fingerprint_validation():
    with pytest.raises(ValueError):
        Fingerprint(phi={0: 3})
    with pytest.raises(ValueError):
        Fingerprint(phi={2: 0})


def test_falling_factorial_examples():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(7, 0) == 1


def test_falling_factorial_vs_factorial_table():
    for N in range(21):
        for t in range(N + 1):
            assert falling_factorial(N, t) == math.factorial(N) // math.factorial(N - t)


def test_falling_factorial_large_values_exact():
    # Arbitrary-precision integers: no overflow even far beyond 64 bits.
    v = falling_factorial(200, 40)
    assert v == math.factorial(200) // math.factorial(160)
    with pytest.raises(ValueError):
        falling_factorial(-1, 2)


def test_poisson_tail_examples():
    assert abs(poisson_tail(1.0, 1) - (1.0 - math.exp(-1.0))) < 1e-15
    assert poisson_tail(3.7, 0) == 1.0
    # Direct pmf summation oracle for Pr(Poi(2) >= 3) = 1 - 5 e^-2.
    direct = 1.0 - math.exp(-2.0) * (1.0 + 2.0 + 2.0)
    assert abs(poisson_tail(2.0, 3) - direct) < 1e-15


def test_poisson_tail_monotone_and_complement():
    for r in (0.3, 1.0, 7.5, 42.0):
        tails = [poisson_tail(r, j) for j in range(0, 120)]
        assert all(a >= b for a, b in zip(tails, tails[1:]))
        for j in (1, 5, 60):
            cdf = math.fsum(math.exp(-r) * r**i / math.factorial(i) for i in range(j))
            assert abs(tails[j] + cdf - 1.0) <= 1e-12


def test_poisson_tail_against_scipy():
    rng = np.random.default_rng(3)
    for _ in range(200):
        r = float(rng.uniform(0.01, 50.0))
        j = int(rng.integers(0, 500))
        assert abs(poisson_tail(r, j) - float(sp_poisson.sf(j - 1, r))) < 1e-13


def test_poisson_tail_exactness_high_precision():
    # Pr(Poi(r) >= j) equals the regularized lower incomplete gamma P(j, r);
    # check against a 50-digit evaluation at the stated 1e-14 absolute bar.
    import mpmath

    mpmath.mp.dps = 50
    rng = np.random.default_rng(17)
    cases = [(float(rng.uniform(0.01, 50.0)), int(rng.integers(1, 500))) for _ in range(40)]
    cases += [(1.0, 1), (50.0, 500), (50.0, 1), (0.5, 40)]
    for r, j in cases:
        exact = mpmath.gammainc(j, 0, r, regularized=True)
        assert abs(poisson_tail(r, j) - float(exact)) <= 1e-14


def test_poisson_tail_edge_cases():
    assert poisson_tail(0.0, 0) == 1.0
    assert poisson_tail(0.0, 1) == 0.0
    with pytest.raises(ValueError):
        poisson_tail(-1.0, 2)


def test_tail_bound_examples():
    chk = check_tail_bounds(10.0, 0.5)
    assert abs(chk.upper_bound - math.exp(-10.0 / 12.0)) < 1e-15
    assert abs(chk.lower_bound - math.exp(-1.25)) < 1e-15
    assert chk.upper_exact <= chk.upper_bound
    assert chk.lower_exact <= chk.lower_bound
    big = check_tail_bounds(1.0, 3.0)
    assert abs(big.upper_bound - math.exp(-1.0)) < 1e-15  # min(9, 3) = 3
    assert big.lower_exact is None


@pytest.mark.parametrize("mu", TAIL_GRID_MU)
@pytest.mark.parametrize("delta", TAIL_GRID_DELTA)
def test_tail_bounds_grid(mu, delta):
    assert check_tail_bounds(mu, delta).holds()


def test_tail_bounds_validation():
    with pytest.raises(ValueError):
        check_tail_bounds(0.0, 0.5)
    with pytest.raises(ValueError):
        check_tail_bounds(1.0, 0.0)
