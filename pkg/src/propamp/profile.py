"""Sample summaries: count vectors, fingerprints, falling factorials, and
exact Poisson tail probabilities.

These are the shared primitives: the fingerprint feeds the support-size and
coverage estimators, the falling factorial feeds the unbiased polynomial
evaluation of the entropy/l1 estimators, and the exact Poisson tails back
both the smoothing coefficients and the concentration-bound test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from scipy.special import gammaln

__all__ = [
    "CountVector",
    "Fingerprint",
    "fingerprint",
    "falling_factorial",
    "poisson_logpmf",
    "poisson_pmf",
    "poisson_tail",
    "TailBoundCheck",
    "check_tail_bounds",
]


@dataclass(frozen=True)
class CountVector:
    """Per-symbol sample counts N_i with their cached total."""

    counts: np.ndarray
    total: int = field(default=-1)

    def __post_init__(self):
        c = np.ascontiguousarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", c)
        if c.ndim != 1:
            raise ValueError("counts must be a 1-D vector")
        if np.any(c < 0):
            raise ValueError("counts must be nonnegative")
        tot = int(c.sum())
        if self.total == -1:
            object.__setattr__(self, "total", tot)
        elif self.total != tot:
            raise ValueError(f"declared total {self.total} != sum of counts {tot}")


@dataclass(frozen=True)
class Fingerprint:
    """Profile phi_j = number of symbols observed exactly j times (j >= 1)."""

    phi: Dict[int, int]

    def __post_init__(self):
        for j, c in self.phi.items():
            if j < 1 or c < 1:
                raise ValueError("fingerprint stores only j >= 1 with phi_j >= 1")

    @property
    def total(self) -> int:
        return sum(j * c for j, c in self.phi.items())

    @property
    def distinct(self) -> int:
        return sum(self.phi.values())


def fingerprint(counts: CountVector | np.ndarray) -> Fingerprint:
    """Profile of a count vector; symbols with zero count are excluded."""
    c = counts.counts if isinstance(counts, CountVector) else np.asarray(counts)
    c = c[c > 0]
    js, reps = np.unique(c, return_counts=True)
    return Fingerprint(phi={int(j): int(r) for j, r in zip(js, reps)})


def falling_factorial(N: int, t: int) -> int:
    """Order-t falling factorial N(N-1)...(N-t+1), exactly.

    Returns 1 for t = 0 and 0 for t > N.  Python integers are unbounded, so
    the result is exact for any inputs (no overflow possible).
    """
    if N < 0 or t < 0:
        raise ValueError("falling factorial needs nonnegative arguments")
    if t > N:
        return 0
    return math.perm(N, t)


def poisson_logpmf(r: float, j: np.ndarray | int) -> np.ndarray | float:
    j = np.asarray(j, dtype=np.float64)
    if r == 0.0:
        return np.where(j == 0, 0.0, -np.inf)
    return j * math.log(r) - r - gammaln(j + 1.0)


def poisson_pmf(r: float, j: np.ndarray | int) -> np.ndarray | float:
    return np.exp(poisson_logpmf(r, j))


def poisson_tail(r: float, j: int) -> float:
    """Exact upper tail Pr(Z >= j) for Z ~ Poi(r).

    Computed by a stable pmf recursion in linear space.  For j below the mean
    the complement CDF is accumulated from j-1 downward; above the mean the
    tail is summed directly with the smallest terms added first.
    """
    if r < 0:
        raise ValueError("Poisson rate must be nonnegative")
    if j <= 0:
        return 1.0
    if r == 0.0:
        return 0.0

    if j <= r:
        # Pr(Z >= j) = 1 - sum_{i<j} pmf(i); terms grow toward i = j-1, so
        # accumulate from the small side (i = 0) upward.
        pmf = math.exp(-r)
        acc = pmf
        for i in range(1, j):
            pmf *= r / i
            acc += pmf
        return max(0.0, 1.0 - acc)

    # Direct tail sum from j upward; terms decay, so collect then add the
    # smallest first.
    logp = float(poisson_logpmf(r, j))
    if logp < -745.0:  # below double underflow
        return 0.0
    pmf = math.exp(logp)
    terms = []
    i = j
    while pmf > 0.0 and (pmf > 1e-22 * (1.0 if not terms else terms[0]) or i < r):
        terms.append(pmf)
        i += 1
        pmf *= r / i
        if i > j + 10_000_000:  # defensive; unreachable for sane inputs
            break
    return float(math.fsum(reversed(terms)))


@dataclass(frozen=True)
class TailBoundCheck:
    """Exact Poisson tails next to their Chernoff-style bounds.

    upper refers to Pr(X >= (1+delta)mu), lower to Pr(X <= (1-delta)mu).
    The bounds are exp(-(delta^2 ^ delta) mu / 3) and exp(-delta^2 mu / 2);
    lower_* fields are None when delta >= 1 (the lower bound needs delta < 1).
    """

    mu: float
    delta: float
    upper_exact: float
    upper_bound: float
    lower_exact: Optional[float]
    lower_bound: Optional[float]

    def holds(self) -> bool:
        ok = self.upper_exact <= self.upper_bound
        if self.lower_exact is not None:
            ok = ok and self.lower_exact <= self.lower_bound
        return ok


def check_tail_bounds(mu: float, delta: float) -> TailBoundCheck:
    """Exact Poi(mu) tail probabilities against their exponential bounds."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    if delta <= 0:
        raise ValueError("delta must be positive")
    up_thr = math.ceil((1.0 + delta) * mu)
    upper_exact = poisson_tail(mu, up_thr)
    upper_bound = math.exp(-min(delta * delta, delta) * mu / 3.0)
    if delta < 1.0:
        lo_thr = math.floor((1.0 - delta) * mu)
        lower_exact = 1.0 - poisson_tail(mu, lo_thr + 1)
        lower_bound = math.exp(-delta * delta * mu / 2.0)
    else:
        lower_exact = None
        lower_bound = None
    return TailBoundCheck(
        mu=mu,
        delta=delta,
        upper_exact=upper_exact,
        upper_bound=upper_bound,
        lower_exact=lower_exact,
        lower_bound=lower_bound,
    )
