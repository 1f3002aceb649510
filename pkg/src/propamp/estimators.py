"""Empirical plug-in estimators and their competitive (amplified) versions.

The competitive entropy/l1 estimators use two independent samples: the main
counts feed either an unbiased falling-factorial evaluation of the amplified
polynomial (small-probability branch) or the plug-in kernel (large branch),
with the branch chosen per symbol from the probe counts.  Support size and
coverage use a single sample's fingerprint with tail-smoothed alternating
coefficients.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dist import DiscreteDistribution, PropertySpec
from .polyapprox import (
    DEFAULT_C_L,
    DEFAULT_C_S,
    AmplificationParams,
    IntervalPolynomial,
    build_amplified_entropy_poly,
    build_lipschitz_poly,
    build_refined_entropy_poly,
    entropy_kernel,
)
from .profile import CountVector, Fingerprint, poisson_tail

__all__ = [
    "EstimatorConfig",
    "Estimate",
    "empirical_estimate",
    "competitive_entropy",
    "competitive_l1",
    "competitive_support_size",
    "competitive_coverage",
    "resolve_amplification",
    "entropy_poly_for",
    "l1_poly_for",
]

# The size/coverage error guarantees need epsilon <= e^-2.
SIZE_EPSILON_CAP = math.exp(-2.0)


@dataclass(frozen=True)
class EstimatorConfig:
    """Knobs shared by the competitive estimators.

    epsilon drives the amplification (a = eps*ln n for entropy/l1; the
    e^-2 cap applies when it drives support size / coverage smoothing).
    r is the smoothing Poisson parameter; left None it defaults to |ln eps|.
    a is the explicit amplification for size/coverage; left None it must be
    resolved from data (resolve_amplification) or supplied by an oracle.
    m is the coverage horizon.  refined switches the entropy estimator to the
    series-corrected polynomial.
    """

    epsilon: float = 1.0
    c_l: float = DEFAULT_C_L
    c_s: float = DEFAULT_C_S
    r: Optional[float] = None
    a: Optional[float] = None
    m: Optional[int] = None
    refined: bool = False
    remez: bool = False

    def __post_init__(self):
        if not 0.0 < self.epsilon <= 1.0:
            raise ValueError("epsilon must be in (0, 1]")
        if self.r is not None and self.r < 0:
            raise ValueError("smoothing parameter r must be nonnegative")
        if self.a is not None and self.a < 1.0:
            raise ValueError("amplification a must be >= 1")

    @property
    def smoothing_r(self) -> float:
        return abs(math.log(self.epsilon)) if self.r is None else self.r

    def amplification_params(self, n: int) -> AmplificationParams:
        return AmplificationParams(n=n, epsilon=self.epsilon, c_l=self.c_l, c_s=self.c_s)


@dataclass(frozen=True)
class Estimate:
    """An estimator output plus routing diagnostics.

    branch_counts = (symbols routed to the small branch, symbols routed to
    the large branch).  Symbols failing both indicators (count above the
    small-branch cap but probe below the threshold) contribute zero and are
    reported in dropped.
    """

    value: float
    branch_counts: tuple[int, int] = (0, 0)
    dropped: int = 0


# ---------------------------------------------------------------------------
# Empirical plug-in estimators
# ---------------------------------------------------------------------------

def _as_counts(counts) -> np.ndarray:
    if isinstance(counts, CountVector):
        return counts.counts
    return np.asarray(counts, dtype=np.int64)


def empirical_estimate(spec: PropertySpec, counts, n: int) -> float:
    """The plug-in estimate sum_i f_i(N_i / n) for the chosen property."""
    if n < 1:
        raise ValueError("sample budget n must be >= 1")
    c = _as_counts(counts).astype(np.float64)
    x = c / n
    if spec.kind == "entropy":
        return float(entropy_kernel(x).sum())
    if spec.kind == "l1":
        if len(spec.q.probs) != len(c):
            raise ValueError("counts and reference distribution disagree on alphabet")
        return float(np.abs(x - spec.q.probs).sum())
    if spec.kind == "support_size":
        return float(np.count_nonzero(c > 0))
    if spec.kind == "coverage":
        base = np.clip(1.0 - x, 0.0, 1.0)
        return float((1.0 - base ** spec.m).sum())
    raise AssertionError(spec.kind)


# ---------------------------------------------------------------------------
# Polynomial caches
# ---------------------------------------------------------------------------

_POLY_CACHE: dict = {}
_POLY_LOCK = threading.Lock()


def entropy_poly_for(n: int, cfg: EstimatorConfig) -> IntervalPolynomial:
    """Memoized amplified entropy polynomial for this (n, config)."""
    key = ("H", n, cfg.epsilon, cfg.c_l, cfg.c_s, cfg.refined, cfg.remez)
    with _POLY_LOCK:
        poly = _POLY_CACHE.get(key)
    if poly is not None:
        return poly
    params = cfg.amplification_params(n)
    build = build_refined_entropy_poly if cfg.refined else build_amplified_entropy_poly
    poly = build(params, remez=cfg.remez, diag_grid=0)
    with _POLY_LOCK:
        _POLY_CACHE.setdefault(key, poly)
    return poly


def l1_poly_for(n: int, q: float, cfg: EstimatorConfig) -> IntervalPolynomial:
    """Memoized amplified polynomial for the shifted kernel |x - q| - q."""
    key = ("L1", n, cfg.epsilon, cfg.c_l, cfg.c_s, cfg.remez, float(q))
    with _POLY_LOCK:
        poly = _POLY_CACHE.get(key)
    if poly is not None:
        return poly
    params = cfg.amplification_params(n)

    def kernel(x):
        return np.abs(np.asarray(x, dtype=np.float64) - q) - q

    poly = build_lipschitz_poly(kernel, params, remez=cfg.remez, diag_grid=0)
    with _POLY_LOCK:
        _POLY_CACHE.setdefault(key, poly)
    return poly


def _falling_factorial_values(coeffs: np.ndarray, counts: np.ndarray, n: int) -> np.ndarray:
    """Vectorized sum_t coeffs[t] * N^(falling t) / n^t per symbol.

    Computed as products of (N - m)/n factors so intermediate magnitudes stay
    moderate; counts above the degree simply keep accumulating factors, and
    counts below it hit an exact zero factor.
    """
    c = counts.astype(np.float64)
    out = np.zeros_like(c)
    term = np.ones_like(c)
    for t in range(1, len(coeffs)):
        term = term * (c - (t - 1)) / n
        if coeffs[t] != 0.0:
            out += coeffs[t] * term
    return out


# ---------------------------------------------------------------------------
# Competitive estimators
# ---------------------------------------------------------------------------

def _routing(
    counts: np.ndarray, probe: np.ndarray, n: int, cfg: EstimatorConfig
) -> tuple[np.ndarray, np.ndarray]:
    # Probe at or below 1/eps routes small (ties go small); strictly above
    # routes large. The small branch additionally caps the main count.
    probe_small = probe <= 1.0 / cfg.epsilon
    small = probe_small & (counts <= cfg.c_l * math.log(n))
    large = ~probe_small
    return small, large


def competitive_entropy(
    counts_main,
    counts_probe,
    n: int,
    cfg: EstimatorConfig,
) -> Estimate:
    """Amplified entropy estimate from main and probe count vectors.

    Small-probability symbols get the unbiased falling-factorial evaluation
    of the amplified polynomial; large ones get the plug-in kernel at the
    main counts.  Both count vectors must come from independent samples with
    the same nominal budget n.
    """
    main = _as_counts(counts_main)
    probe = _as_counts(counts_probe)
    if main.shape != probe.shape:
        raise ValueError("main and probe count vectors must share the alphabet")
    poly = entropy_poly_for(n, cfg)
    small, large = _routing(main, probe, n, cfg)
    value = 0.0
    if small.any():
        value += float(_falling_factorial_values(poly.coeffs, main[small], n).sum())
    if large.any():
        value += float(entropy_kernel(main[large] / n).sum())
    dropped = int(len(main) - small.sum() - large.sum())
    return Estimate(value=value, branch_counts=(int(small.sum()), int(large.sum())), dropped=dropped)


def competitive_l1(
    counts_main,
    counts_probe,
    n: int,
    q: DiscreteDistribution,
    cfg: EstimatorConfig,
) -> Estimate:
    """Amplified l1-distance estimate against a known reference q.

    Works per symbol on the shifted kernel |x - q_i| - q_i (zero at zero,
    1-Lipschitz) and adds back sum_i q_i = 1, so the output estimates
    sum_i |p_i - q_i|.
    """
    main = _as_counts(counts_main)
    probe = _as_counts(counts_probe)
    if main.shape != probe.shape or len(main) != q.k:
        raise ValueError("count vectors and reference must share the alphabet")
    small, large = _routing(main, probe, n, cfg)
    value = 0.0
    if small.any():
        qs = q.probs[small]
        ms = main[small]
        for qi in np.unique(qs):
            sel = qs == qi
            poly = l1_poly_for(n, float(qi), cfg)
            value += float(_falling_factorial_values(poly.coeffs, ms[sel], n).sum())
    if large.any():
        value += float((np.abs(main[large] / n - q.probs[large]) - q.probs[large]).sum())
    value += 1.0
    dropped = int(len(main) - small.sum() - large.sum())
    return Estimate(value=value, branch_counts=(int(small.sum()), int(large.sum())), dropped=dropped)


def _smoothed_coefficient(j: int, amp: float, r: float) -> float:
    """1 - (-(amp-1))^j  Pr(Poi(r) >= j), with the power in log space."""
    if amp == 1.0:
        return 1.0  # (-0)^j = 0 for j >= 1: plain distinct count
    tail = poisson_tail(r, j)
    if tail == 0.0:
        return 1.0
    mag = j * math.log(amp - 1.0) + math.log(tail)
    if mag > 700.0:
        raise OverflowError(
            f"smoothing coefficient overflow at j={j}; amplification too large"
        )
    signed = math.exp(mag)
    return 1.0 + signed if j % 2 else 1.0 - signed


def _fingerprint_estimate(fp: Fingerprint, amp: float, r: float) -> float:
    return float(
        math.fsum(c * _smoothed_coefficient(j, amp, r) for j, c in sorted(fp.phi.items()))
    )


def competitive_support_size(fp: Fingerprint, cfg: EstimatorConfig) -> Estimate:
    """Tail-smoothed support-size estimate from a fingerprint.

    Estimates the expected distinct count an a-fold larger sample would see:
    sum_j phi_j (1 - (-(a-1))^j Pr(Poi(r) >= j)).  cfg.a must be set (>= 1);
    a = 1 reduces exactly to the observed distinct count.
    """
    if cfg.a is None:
        raise ValueError("support-size estimator needs cfg.a (see resolve_amplification)")
    value = _fingerprint_estimate(fp, cfg.a, cfg.smoothing_r)
    return Estimate(value=value, branch_counts=(fp.distinct, 0))


def competitive_coverage(fp: Fingerprint, n: int, cfg: EstimatorConfig) -> Estimate:
    """Tail-smoothed coverage estimate from a fingerprint.

    The horizon enters through the damped amplification
    a' = a (1 - exp(-m/(n a))).  The amplified regime requires m >= 1.5 n and
    a > 1.8 (which guarantees a' > 1); a = 1 is allowed as the plug-in
    fallback.  Violations raise rather than clamp.
    """
    if cfg.a is None:
        raise ValueError("coverage estimator needs cfg.a (see resolve_amplification)")
    if cfg.m is None:
        raise ValueError("coverage estimator needs the horizon cfg.m")
    a, m = cfg.a, cfg.m
    if a == 1.0:
        a_prime = 1.0
    else:
        if m < 1.5 * n:
            raise ValueError(f"amplified coverage needs m >= 1.5 n (m={m}, n={n})")
        if a <= 1.8:
            raise ValueError(f"amplified coverage needs a > 1.8 (a={a})")
        a_prime = a * (1.0 - math.exp(-m / (n * a)))
    value = _fingerprint_estimate(fp, a_prime, cfg.smoothing_r)
    return Estimate(value=value, branch_counts=(fp.distinct, 0))


def coverage_amplification(a: float, n: int, m: int) -> float:
    """a' = a (1 - exp(-m/(n a))), the horizon-damped amplification."""
    return a * (1.0 - math.exp(-m / (n * a)))


def resolve_amplification(cfg: EstimatorConfig, observed_scale: float) -> float:
    """Data-driven amplification a = ln(scale) / ln(1/eps)^2, floored at 1.

    The theory sets a from the unknown property value (support size or
    coverage); the plug-in default feeds in the observed distinct count or
    plug-in coverage.  Requires epsilon <= e^-2.
    """
    if cfg.epsilon > SIZE_EPSILON_CAP + 1e-15:
        raise ValueError("size/coverage amplification requires epsilon <= e^-2")
    if observed_scale <= 1.0:
        return 1.0
    denom = math.log(1.0 / cfg.epsilon) ** 2
    return max(1.0, math.log(observed_scale) / denom)
