import math

import numpy as np
import pytest

from propamp import (
    DiscreteDistribution,
    PropertySpec,
    make_distribution,
    parse_family_spec,
    sample_counts,
    true_value,
)

ALL_FAMILY_SPECS = [
    ("uniform", {}),
    ("two-steps", {}),
    ("zipf", {"power": 0.5}),
    ("zipf", {"power": 1.0}),
    ("binomial", {"success": 0.3}),
    ("geometric", {"success": 0.9}),
    ("poisson", {}),
    ("dirichlet", {"alpha": 1.0, "seed": 7}),
    ("dirichlet", {"alpha": 0.5, "seed": 7}),
]


def test_uniform_example():
    d = make_distribution("uniform", 4)
    np.testing.assert_allclose(d.probs, [0.25, 0.25, 0.25, 0.25], atol=0)


def test_two_steps_example():
    d = make_distribution("two-steps", 4)
    np.testing.assert_allclose(d.probs, [0.125, 0.125, 0.375, 0.375], atol=1e-15)


def test_zipf_example():
    d = make_distribution("zipf", 3, {"power": 1.0})
    np.testing.assert_allclose(d.probs, [6 / 11, 3 / 11, 2 / 11], atol=1e-15)


@pytest.mark.parametrize("family,params", ALL_FAMILY_SPECS)
@pytest.mark.parametrize("k", [2, 10, 1000])
def test_families_normalized(family, params, k):
    d = make_distribution(family, k, params)
    assert abs(float(d.probs.sum()) - 1.0) <= 1e-12
    assert np.all(d.probs >= 0)
    assert len(d.probs) == k


@pytest.mark.parametrize("family,params", ALL_FAMILY_SPECS)
def test_entropy_within_range(family, params):
    d = make_distribution(family, 1000, params)
    h = true_value(d, PropertySpec(kind="entropy"))
    assert 0.0 <= h <= math.log(1000) + 1e-12


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        make_distribution("cauchy", 10)


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        make_distribution("zipf", 10, {"power": -1.0})
    with pytest.raises(ValueError):
        make_distribution("geometric", 10, {"success": 1.5})
    with pytest.raises(ValueError):
        make_distribution("uniform", 0)


def test_dirichlet_needs_randomness():
    with pytest.raises(ValueError):
        make_distribution("dirichlet", 10)
    d1 = make_distribution("dirichlet", 10, {"seed": 3})
    d2 = make_distribution("dirichlet", 10, {"seed": 3})
    np.testing.assert_array_equal(d1.probs, d2.probs)


def test_true_values():
    u4 = make_distribution("uniform", 4)
    assert abs(true_value(u4, PropertySpec(kind="entropy")) - math.log(4)) < 1e-12

    half = DiscreteDistribution(probs=np.array([0.5, 0.5, 0.0, 0.0]), family="custom", k=4)
    assert true_value(half, PropertySpec(kind="support_size")) == 2.0

    u2 = make_distribution("uniform", 2)
    assert abs(true_value(u2, PropertySpec(kind="coverage", m=1)) - 1.0) < 1e-12


def test_l1_true_value_and_alphabet_check():
    u4 = make_distribution("uniform", 4)
    q = DiscreteDistribution(probs=np.array([1.0, 0.0, 0.0, 0.0]), family="custom", k=4)
    got = true_value(u4, PropertySpec(kind="l1", q=q))
    assert abs(got - 1.5) < 1e-12
    q2 = make_distribution("uniform", 5)
    with pytest.raises(ValueError):
        true_value(u4, PropertySpec(kind="l1", q=q2))


def test_property_spec_validation():
    u = make_distribution("uniform", 3)
    with pytest.raises(ValueError):
        PropertySpec(kind="entropy", q=u)
    with pytest.raises(ValueError):
        PropertySpec(kind="l1")
    with pytest.raises(ValueError):
        PropertySpec(kind="coverage")
    with pytest.raises(ValueError):
        PropertySpec(kind="support_size", m=5)


def test_distribution_invariants_enforced():
    with pytest.raises(ValueError):
        DiscreteDistribution(probs=np.array([0.5, 0.6]), family="x", k=2)
    with pytest.raises(ValueError):
        DiscreteDistribution(probs=np.array([1.2, -0.2]), family="x", k=2)


def test_sample_empty_and_singleton():
    u = make_distribution("uniform", 5)
    rng = np.random.default_rng(0)
    assert sample_counts(u, 0, "fixed", rng).sum() == 0
    single = DiscreteDistribution(probs=np.array([1.0]), family="custom", k=1)
    np.testing.assert_array_equal(sample_counts(single, 7, "fixed", rng), [7])


@pytest.mark.parametrize("n", [1, 17, 1000, 100_000])
def test_fixed_counts_sum_exactly(n):
    d = make_distribution("zipf", 50, {"power": 1.0})
    rng = np.random.default_rng(n)
    counts = sample_counts(d, n, "fixed", rng)
    assert counts.sum() == n


def test_poissonized_mean_matches():
    # k=10 Zipf(1), 10^4 trials: empirical mean of each N_i within 4 SE of n p_i.
    d = make_distribution("zipf", 10, {"power": 1.0})
    n, trials = 100, 10_000
    rng = np.random.default_rng(42)
    draws = rng.poisson(n * d.probs, size=(trials, d.k))
    means = draws.mean(axis=0)
    se = np.sqrt(n * d.probs / trials)
    assert np.all(np.abs(means - n * d.probs) <= 4.0 * se)


def test_poisson_concentration():
    # Uniform k=2 at n=10^6: each count within 5e3 of 5e5, across 30 seeded runs.
    d = make_distribution("uniform", 2)
    for seed in range(30):
        counts = sample_counts(d, 1_000_000, "poissonized", np.random.default_rng(seed))
        assert np.all(np.abs(counts - 500_000) <= 5_000)


def test_bad_sampling_args():
    d = make_distribution("uniform", 3)
    with pytest.raises(ValueError):
        sample_counts(d, -1, "fixed")
    with pytest.raises(ValueError):
        sample_counts(d, 5, "bootstrapped")


def test_parse_family_spec():
    d = parse_family_spec("zipf:k=3,power=1")
    np.testing.assert_allclose(d.probs, [6 / 11, 3 / 11, 2 / 11], atol=1e-15)
    d2 = parse_family_spec("dirichlet:k=20,alpha=0.5,seed=7")
    d3 = parse_family_spec("dirichlet:k=20,alpha=0.5,seed=7")
    np.testing.assert_array_equal(d2.probs, d3.probs)
    with pytest.raises(ValueError):
        parse_family_spec("zipf:power=1")  # k missing
    with pytest.raises(ValueError):
        parse_family_spec("uniform:k=10,oops")
