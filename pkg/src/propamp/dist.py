"""Synthetic discrete distributions, exact property values, and sampling.

The nine benchmark families are: uniform, two-steps, Zipf(1/2), Zipf(1),
binomial(0.3), geometric(0.9), Poisson(0.3k), Dirichlet(1)-drawn and
Dirichlet(1/2)-drawn, all on an alphabet of size k.  Zipf, geometric and
Poisson families are truncated at k and renormalized.  All entropies are in
nats (natural log) throughout the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import binom as _binom, poisson as _poisson

__all__ = [
    "DiscreteDistribution",
    "PropertySpec",
    "make_distribution",
    "parse_family_spec",
    "true_value",
    "sample_counts",
    "FAMILIES",
]

_PROB_TOL = 1e-12

FAMILIES = (
    "uniform",
    "two-steps",
    "zipf",
    "binomial",
    "geometric",
    "poisson",
    "dirichlet",
)


@dataclass(frozen=True)
class DiscreteDistribution:
    """A probability vector over the alphabet {0, ..., k-1}."""

    probs: np.ndarray
    family: str
    k: int

    def __post_init__(self):
        p = np.ascontiguousarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", p)
        if p.ndim != 1 or len(p) != self.k:
            raise ValueError(f"probs must be a length-{self.k} vector")
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(float(p.sum()) - 1.0) > _PROB_TOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.probs > 0))


@dataclass(frozen=True)
class PropertySpec:
    """Which additive property to estimate.

    kind is one of 'entropy', 'l1', 'support_size', 'coverage'.  An l1 spec
    carries the reference distribution q; a coverage spec carries the horizon
    m (expected distinct symbols in m draws).
    """

    kind: str
    q: Optional[DiscreteDistribution] = None
    m: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("entropy", "l1", "support_size", "coverage"):
            raise ValueError(f"unknown property kind {self.kind!r}")
        if (self.q is not None) != (self.kind == "l1"):
            raise ValueError("reference distribution q is required exactly for l1")
        if (self.m is not None) != (self.kind == "coverage"):
            raise ValueError("horizon m is required exactly for coverage")
        if self.m is not None and self.m < 1:
            raise ValueError("coverage horizon m must be a positive integer")


def _zipf_probs(k: int, power: float) -> np.ndarray:
    if power <= 0:
        raise ValueError("zipf power must be > 0")
    w = 1.0 / np.arange(1, k + 1, dtype=np.float64) ** power
    return w / w.sum()


def _two_steps_probs(k: int) -> np.ndarray:
    # First half gets mass 0.5/k per symbol, second half 1.5/k. For odd k the
    # halves are floor/ceil sized and the vector is renormalized.
    lo = k // 2
    p = np.empty(k, dtype=np.float64)
    p[:lo] = 0.5 / k
    p[lo:] = 1.5 / k
    return p / p.sum()


def _geometric_probs(k: int, success: float) -> np.ndarray:
    if not 0.0 < success < 1.0:
        raise ValueError("geometric success probability must be in (0,1)")
    logw = np.arange(k, dtype=np.float64) * math.log1p(-success) + math.log(success)
    w = np.exp(logw - logw.max())
    return w / w.sum()


def make_distribution(
    family: str,
    k: int,
    params: Optional[dict] = None,
    rng: Optional[np.random.Generator] = None,
) -> DiscreteDistribution:
    """Construct one of the synthetic families on alphabet size k.

    Dirichlet families consume ``rng`` (or ``params['seed']``); all other
    families are deterministic.  Family-specific parameters:

    - zipf: power (default 1.0)
    - binomial: success (default 0.3); symbol i gets Binomial(k-1, success) mass
    - geometric: success (default 0.9)
    - poisson: mean (default 0.3*k); Poi(mean) mass on {0,...,k-1}, renormalized
    - dirichlet: alpha (default 1.0), seed (optional)
    """
    if k < 1:
        raise ValueError("alphabet size k must be >= 1")
    params = dict(params or {})

    if family == "uniform":
        p = np.full(k, 1.0 / k)
    elif family in ("two-steps", "two_steps"):
        family = "two-steps"
        p = _two_steps_probs(k)
    elif family == "zipf":
        p = _zipf_probs(k, float(params.get("power", 1.0)))
    elif family == "binomial":
        success = float(params.get("success", 0.3))
        if not 0.0 < success < 1.0:
            raise ValueError("binomial success probability must be in (0,1)")
        p = _binom.pmf(np.arange(k), k - 1, success)
        p = p / p.sum()
    elif family == "geometric":
        p = _geometric_probs(k, float(params.get("success", 0.9)))
    elif family == "poisson":
        mean = float(params.get("mean", 0.3 * k))
        if mean <= 0:
            raise ValueError("poisson mean must be > 0")
        p = _poisson.pmf(np.arange(k), mean)
        p = p / p.sum()
    elif family == "dirichlet":
        alpha = float(params.get("alpha", 1.0))
        if alpha <= 0:
            raise ValueError("dirichlet alpha must be > 0")
        if "seed" in params:
            rng = np.random.default_rng(int(params["seed"]))
        if rng is None:
            raise ValueError("dirichlet family needs an rng or a seed parameter")
        # Gamma-ratio construction of a Dirichlet(alpha,...,alpha) draw.
        g = rng.gamma(alpha, 1.0, size=k)
        while g.sum() == 0.0:
            g = rng.gamma(alpha, 1.0, size=k)
        p = g / g.sum()
    else:
        raise ValueError(f"unknown family {family!r}")

    return DiscreteDistribution(probs=p, family=family, k=k)


def parse_family_spec(spec: str, rng: Optional[np.random.Generator] = None) -> DiscreteDistribution:
    """Parse a CLI family string like ``zipf:k=1000,power=1``.

    The part before ':' is the family label; the rest is a comma-separated
    key=value list.  ``k`` is required.
    """
    if ":" in spec:
        family, _, rest = spec.partition(":")
        items = [kv for kv in rest.split(",") if kv]
    else:
        family, items = spec, []
    params = {}
    for kv in items:
        if "=" not in kv:
            raise ValueError(f"bad family parameter {kv!r} in {spec!r}")
        key, _, val = kv.partition("=")
        params[key.strip()] = val.strip()
    if "k" not in params:
        raise ValueError(f"family spec {spec!r} must set k")
    k = int(params.pop("k"))
    params = {key: float(v) for key, v in params.items()}
    if "seed" in params:
        params["seed"] = int(params["seed"])
    return make_distribution(family.strip(), k, params, rng=rng)


def entropy_nats(probs: np.ndarray) -> float:
    p = probs[probs > 0]
    return float(-(p * np.log(p)).sum())


def true_value(dist: DiscreteDistribution, spec: PropertySpec) -> float:
    """Exact value of the property for a known distribution."""
    if spec.kind == "entropy":
        return entropy_nats(dist.probs)
    if spec.kind == "l1":
        if spec.q.k != dist.k:
            raise ValueError("l1 reference distribution must share the alphabet")
        return float(np.abs(dist.probs - spec.q.probs).sum())
    if spec.kind == "support_size":
        return float(dist.support_size)
    if spec.kind == "coverage":
        # sum of 1-(1-p)^m, computed via expm1 for small p
        return float(-np.expm1(spec.m * np.log1p(-np.minimum(dist.probs, 1.0))).sum())
    raise AssertionError(spec.kind)


def sample_counts(
    dist: DiscreteDistribution,
    n: int,
    mode: str = "fixed",
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """Draw per-symbol counts from the distribution.

    mode='fixed' draws a multinomial sample of exactly n observations;
    mode='poissonized' draws each count independently as Poi(n * p_i).
    """
    if n < 0:
        raise ValueError("sample size must be nonnegative")
    if rng is None:
        rng = np.random.default_rng()
    if mode == "fixed":
        if n == 0:
            return np.zeros(dist.k, dtype=np.int64)
        return rng.multinomial(n, dist.probs).astype(np.int64)
    if mode == "poissonized":
        return rng.poisson(n * dist.probs).astype(np.int64)
    raise ValueError(f"unknown sampling mode {mode!r}")
