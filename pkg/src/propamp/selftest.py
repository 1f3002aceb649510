"""Quick invariant oracles behind the `selftest` CLI subcommand.

These are fast spot checks of the core identities (the pytest suite is the
authoritative gate); each prints one PASS/FAIL line.
"""

from __future__ import annotations

import math

import numpy as np

from .dist import make_distribution
from .estimators import EstimatorConfig, competitive_support_size, coverage_amplification
from .polyapprox import bernstein_eval, entropy_kernel
from .profile import check_tail_bounds, falling_factorial, fingerprint


def _check(name: str, ok: bool, detail: str = "") -> bool:
    tag = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"[{tag}] {name}{suffix}")
    return ok


def run(seed: int = 1) -> list[str]:
    rng = np.random.default_rng(seed)
    failures = []

    # Bernstein sandwich at a modest degree.
    xs = np.linspace(0.0, 1.0, 101)
    gap = bernstein_eval(entropy_kernel, 100, xs) - entropy_kernel(xs)
    ok = bool(np.all(gap <= 1e-9) and np.all(gap >= -(1 - xs) / 100 - 1e-9))
    if not _check("bernstein sandwich (m=100)", ok):
        failures.append("bernstein")

    # Poisson tail bounds on a small grid.
    ok = True
    for mu in (0.5, 5.0, 20.0):
        for delta in (0.1, 0.5, 2.0):
            ok = ok and check_tail_bounds(mu, delta).holds()
    if not _check("poisson tail bounds", ok):
        failures.append("tails")

    # Falling factorial against the factorial table.
    ok = all(
        falling_factorial(N, t) == math.factorial(N) // math.factorial(N - t)
        for N in range(0, 15)
        for t in range(0, N + 1)
    )
    if not _check("falling factorial identity", ok):
        failures.append("falling-factorial")

    # a = 1 collapse of the smoothed support-size estimator.
    cfg = EstimatorConfig(epsilon=math.exp(-2.0), a=1.0)
    ok = True
    for _ in range(20):
        counts = rng.integers(0, 6, size=30)
        fp = fingerprint(counts)
        ok = ok and competitive_support_size(fp, cfg).value == float(np.count_nonzero(counts))
    if not _check("support-size a=1 collapse", ok):
        failures.append("collapse")

    # Horizon-damped amplification closed form.
    ok = True
    for _ in range(50):
        n = int(rng.integers(10, 500))
        a = float(rng.uniform(1.9, 4.0))
        m = int(math.ceil(1.5 * n + rng.integers(0, 5 * n)))
        direct = a * (1.0 - math.exp(-m / (n * a)))
        ok = ok and abs(coverage_amplification(a, n, m) - direct) <= 1e-12
    if not _check("coverage amplification formula", ok):
        failures.append("coverage-amp")

    # Distribution families normalize.
    ok = True
    for fam in ("uniform", "two-steps", "zipf", "binomial", "geometric", "poisson"):
        d = make_distribution(fam, 1000)
        ok = ok and abs(float(d.probs.sum()) - 1.0) <= 1e-12 and bool(np.all(d.probs >= 0))
    if not _check("family normalization", ok):
        failures.append("families")

    print(f"{'OK' if not failures else 'FAILED'}: {6 - len(failures)}/6 checks passed")
    return failures
