import math

import numpy as np
import pytest

from propamp import (
    AmplificationParams,
    DiscreteDistribution,
    EstimatorConfig,
    PropertySpec,
    build_amplified_entropy_poly,
    competitive_coverage,
    competitive_entropy,
    competitive_l1,
    competitive_support_size,
    empirical_estimate,
    fingerprint,
    make_distribution,
    resolve_amplification,
)
from propamp.estimators import (
    _falling_factorial_values,
    _smoothed_coefficient,
    coverage_amplification,
    l1_poly_for,
)
from propamp.profile import Fingerprint, poisson_logpmf

EPS_SIZE = math.exp(-2.0)


def exact_poisson_expectation(coeffs, n, p):
    """Truncated-sum oracle for E[sum_t c_t N^(t)/n^t], N ~ Poi(np)."""
    lam = n * p
    jmax = int(lam + 60.0 * math.sqrt(max(lam, 1.0)) + 80)
    js = np.arange(0, jmax + 1)
    pmf = np.exp(poisson_logpmf(lam, js))
    return float(pmf @ _falling_factorial_values(coeffs, js.astype(float), n))


# ---------------------------------------------------------------------------
# Empirical plug-ins
# ---------------------------------------------------------------------------

def test_empirical_examples():
    ent = empirical_estimate(PropertySpec(kind="entropy"), np.array([2, 2]), 4)
    assert abs(ent - math.log(2)) < 1e-12
    assert empirical_estimate(PropertySpec(kind="support_size"), np.array([3, 0, 1]), 4) == 2.0
    cov = empirical_estimate(PropertySpec(kind="coverage", m=2), np.array([1, 1]), 2)
    assert abs(cov - 1.5) < 1e-12


def test_empirical_l1():
    q = make_distribution("uniform", 2)
    got = empirical_estimate(PropertySpec(kind="l1", q=q), np.array([4, 0]), 4)
    assert abs(got - 1.0) < 1e-12


def test_empirical_entropy_range():
    rng = np.random.default_rng(2)
    for _ in range(50):
        counts = rng.integers(0, 30, size=20)
        n = max(1, int(counts.sum()))
        ent = empirical_estimate(PropertySpec(kind="entropy"), counts, n)
        nonzero = int(np.count_nonzero(counts))
        assert -1e-12 <= ent <= math.log(max(nonzero, 1)) + 1e-12


def test_empirical_rejects_zero_budget():
    with pytest.raises(ValueError):
        empirical_estimate(PropertySpec(kind="entropy"), np.array([0]), 0)


# ---------------------------------------------------------------------------
# Competitive entropy
# ---------------------------------------------------------------------------

def test_competitive_entropy_zero_counts():
    z = np.zeros(6, dtype=np.int64)
    est = competitive_entropy(z, z, 100, EstimatorConfig())
    assert est.value == 0.0
    assert est.branch_counts == (6, 0)


def test_competitive_entropy_singleton_large_branch():
    est = competitive_entropy(np.array([100]), np.array([100]), 100, EstimatorConfig())
    assert est.value == 0.0  # h(1) = 0 via the plug-in branch
    assert est.branch_counts == (0, 1)


def test_competitive_entropy_dropped_symbols_flagged():
    # Probe says small but the main count exceeds the cap: contributes zero.
    cfg = EstimatorConfig()
    n = 100
    cap = cfg.c_l * math.log(n)
    main = np.array([int(cap) + 5])
    probe = np.array([0])
    est = competitive_entropy(main, probe, n, cfg)
    assert est.value == 0.0
    assert est.dropped == 1


@pytest.mark.parametrize("c_s", [0.3, 2.0])
@pytest.mark.parametrize("n", [1000, 10_000])
def test_small_branch_unbiasedness(c_s, n):
    params = AmplificationParams(n=n, epsilon=1.0, c_l=4.0, c_s=c_s)
    poly = build_amplified_entropy_poly(params, diag_grid=0)
    for p in (0.1 / n, 1.0 / n, 0.9 * params.interval[1]):
        expect = exact_poisson_expectation(poly.coeffs, n, p)
        assert abs(expect - poly(p)) <= 1e-6 * abs(poly(p))


# ---------------------------------------------------------------------------
# Competitive l1
# ---------------------------------------------------------------------------

def test_competitive_l1_singleton():
    q = DiscreteDistribution(probs=np.array([1.0]), family="custom", k=1)
    est = competitive_l1(np.array([100]), np.array([100]), 100, q, EstimatorConfig())
    assert abs(est.value) < 1e-12


def test_competitive_l1_empty_sample():
    # Zero-constant-term polynomials leave exactly the sum-of-q offset.
    q = make_distribution("uniform", 5)
    z = np.zeros(5, dtype=np.int64)
    est = competitive_l1(z, z, 100, q, EstimatorConfig())
    assert abs(est.value - 1.0) < 1e-12


def test_l1_small_branch_unbiasedness():
    n = 1000
    cfg = EstimatorConfig()
    p = 2.0 / n
    poly = l1_poly_for(n, p, cfg)  # kernel shifted at q = p
    expect = exact_poisson_expectation(poly.coeffs, n, p)
    assert abs(expect - poly(p)) <= 1e-6 * max(abs(poly(p)), 1e-12)


def test_competitive_l1_alphabet_check():
    q = make_distribution("uniform", 4)
    with pytest.raises(ValueError):
        competitive_l1(np.zeros(5, dtype=int), np.zeros(5, dtype=int), 10, q, EstimatorConfig())


# ---------------------------------------------------------------------------
# Support size
# ---------------------------------------------------------------------------

def test_support_size_collapse_at_unit_amplification():
    rng = np.random.default_rng(7)
    cfg = EstimatorConfig(epsilon=EPS_SIZE, a=1.0)
    for _ in range(100):
        counts = rng.integers(0, 8, size=int(rng.integers(1, 60)))
        fp = fingerprint(counts)
        distinct = float(np.count_nonzero(counts))
        assert competitive_support_size(fp, cfg).value == distinct


def test_support_size_empty_fingerprint():
    cfg = EstimatorConfig(epsilon=EPS_SIZE, a=2.0, r=2.0)
    assert competitive_support_size(Fingerprint(phi={}), cfg).value == 0.0


def test_support_size_linear_in_fingerprint():
    cfg = EstimatorConfig(epsilon=EPS_SIZE, a=1.7, r=2.0)
    fp1 = Fingerprint(phi={1: 4, 3: 2})
    fp2 = Fingerprint(phi={1: 1, 2: 5})
    merged = Fingerprint(phi={1: 5, 2: 5, 3: 2})
    lhs = competitive_support_size(merged, cfg).value
    rhs = competitive_support_size(fp1, cfg).value + competitive_support_size(fp2, cfg).value
    assert lhs == rhs


def test_smoothed_coefficient_magnitude_bound():
    # |1 - (-(a-1))^j Pr(Z >= j)| <= 1 + e^(r(a-1)) for a = 2, r = 2.
    a, r = 2.0, 2.0
    cap = 1.0 + math.exp(r * (a - 1.0))
    for j in range(1, 201):
        assert abs(_smoothed_coefficient(j, a, r)) <= cap + 1e-12


def test_support_size_requires_amplification():
    with pytest.raises(ValueError):
        competitive_support_size(Fingerprint(phi={1: 1}), EstimatorConfig(epsilon=EPS_SIZE))


def _exact_smoothed_expectation(probs, n, a, r):
    total = 0.0
    for p in probs:
        lam = n * p
        jmax = int(lam + 60.0 * math.sqrt(max(lam, 1.0)) + 80)
        js = np.arange(1, jmax + 1)
        pmf = np.exp(poisson_logpmf(lam, js))
        coefs = np.array([_smoothed_coefficient(int(j), a, r) for j in js])
        total += float(pmf @ coefs)
    return total


@pytest.mark.parametrize("k", [5, 10])
@pytest.mark.parametrize("n", [20, 50])
@pytest.mark.parametrize("a", [1.5, 2.0])
@pytest.mark.parametrize("r", [1.0, 2.0])
def test_support_size_bias_bound(k, n, a, r):
    # |E[smoothed] - E[distinct in na draws]| <= min(na, S) e^-r + 2,
    # with both expectations exact (Poisson truncation / closed form).
    for family, params in (("uniform", {}), ("zipf", {"power": 1.0})):
        dist = make_distribution(family, k, params)
        smoothed = _exact_smoothed_expectation(dist.probs, n, a, r)
        target = float(np.sum(1.0 - (1.0 - dist.probs) ** (n * a)))
        bound = min(n * a, k) * math.exp(-r) + 2.0
        assert abs(smoothed - target) <= bound


# ---------------------------------------------------------------------------
# Coverage
# ---------------------------------------------------------------------------

def test_coverage_empty_fingerprint():
    cfg = EstimatorConfig(epsilon=EPS_SIZE, a=1.0, m=300)
    assert competitive_coverage(Fingerprint(phi={}), 100, cfg).value == 0.0


def test_coverage_plugin_fallback_collapses():
    # a = 1 gives a' = 1 exactly: the distinct count.
    cfg = EstimatorConfig(epsilon=EPS_SIZE, a=1.0, m=300)
    fp = Fingerprint(phi={1: 3, 2: 2})
    assert competitive_coverage(fp, 100, cfg).value == 5.0


def test_coverage_amplification_example():
    got = coverage_amplification(2.0, 100, 300)
    assert abs(got - 2.0 * (1.0 - math.exp(-1.5))) < 1e-15
    assert abs(got - 1.5537397) < 1e-6


def test_coverage_amplification_matches_direct_form():
    rng = np.random.default_rng(13)
    for _ in range(100):
        n = int(rng.integers(10, 1000))
        a = float(rng.uniform(1.81, 5.0))
        m = int(math.ceil(1.5 * n)) + int(rng.integers(0, 4 * n))
        direct = a * (1.0 - math.exp(-m / (n * a)))
        assert abs(coverage_amplification(a, n, m) - direct) <= 1e-12


def test_coverage_regime_violations_raise():
    fp = Fingerprint(phi={1: 3})
    with pytest.raises(ValueError):  # m < 1.5 n
        competitive_coverage(fp, 100, EstimatorConfig(epsilon=EPS_SIZE, a=2.0, m=100))
    with pytest.raises(ValueError):  # 1 < a <= 1.8
        competitive_coverage(fp, 100, EstimatorConfig(epsilon=EPS_SIZE, a=1.5, m=300))
    with pytest.raises(ValueError):  # missing horizon
        competitive_coverage(fp, 100, EstimatorConfig(epsilon=EPS_SIZE, a=2.0))


# ---------------------------------------------------------------------------
# Amplification resolution
# ---------------------------------------------------------------------------

def test_resolve_amplification_examples():
    cfg = EstimatorConfig(epsilon=EPS_SIZE)
    assert resolve_amplification(cfg, math.exp(4.0)) == 1.0
    assert abs(resolve_amplification(cfg, math.exp(8.0)) - 2.0) < 1e-12
    assert resolve_amplification(cfg, 1.0) == 1.0


def test_resolve_amplification_epsilon_cap():
    with pytest.raises(ValueError):
        resolve_amplification(EstimatorConfig(epsilon=0.5), 100.0)


def test_config_validation():
    with pytest.raises(ValueError):
        EstimatorConfig(epsilon=0.0)
    with pytest.raises(ValueError):
        EstimatorConfig(a=0.5)
    with pytest.raises(ValueError):
        EstimatorConfig(r=-1.0)
    assert EstimatorConfig(epsilon=EPS_SIZE).smoothing_r == pytest.approx(2.0)
