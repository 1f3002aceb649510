"""Competitive (sample-amplified) estimation of discrete distribution
properties: Shannon entropy, l1 distance to a reference, support size, and
support coverage, with empirical plug-in baselines and a benchmark harness.

All logarithms are natural; entropies are in nats.
"""

from .dist import (
    DiscreteDistribution,
    PropertySpec,
    make_distribution,
    parse_family_spec,
    sample_counts,
    true_value,
)
from .profile import (
    CountVector,
    Fingerprint,
    check_tail_bounds,
    falling_factorial,
    fingerprint,
    poisson_tail,
)
from .polyapprox import (
    AmplificationParams,
    IntervalPolynomial,
    bernstein_derivative_eval,
    bernstein_eval,
    bernstein_shift,
    build_amplified_entropy_poly,
    build_lipschitz_poly,
    build_refined_entropy_poly,
    entropy_kernel,
    entropy_poly_error_profile,
    f_series_eval,
    near_minmax_poly,
)
from .estimators import (
    Estimate,
    EstimatorConfig,
    competitive_coverage,
    competitive_entropy,
    competitive_l1,
    competitive_support_size,
    empirical_estimate,
    resolve_amplification,
)
from .bench import (
    BenchRecord,
    ExperimentPlan,
    budget_for,
    emit_results,
    parse_records_csv,
    run_experiment,
)

__version__ = "0.1.0"
