"""Command-line interface.

Subcommands:

- bench:    run the synthetic experiment grid, emit CSV (default) or JSON
- estimate: one-shot estimate from a count file (one integer per line)
- diagnose: dump (x, poly(x), bernstein(x)) triples for the amplified
            entropy polynomial as CSV
- selftest: run the quick invariant oracles and report pass/fail

All logarithms are natural; entropy is reported in nats.  Exit codes:
0 success, 1 runtime failure, 2 argument errors.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import bench as bench_mod
from .dist import PropertySpec, parse_family_spec
from .estimators import (
    EstimatorConfig,
    competitive_coverage,
    competitive_entropy,
    competitive_l1,
    competitive_support_size,
    empirical_estimate,
)
from .polyapprox import (
    DEFAULT_C_L,
    DEFAULT_C_S,
    AmplificationParams,
    build_amplified_entropy_poly,
    build_refined_entropy_poly,
    entropy_poly_error_profile,
)
from .profile import fingerprint

DEFAULT_FAMILIES = (
    "uniform:k=1000",
    "two-steps:k=1000",
    "zipf:k=1000,power=0.5",
    "zipf:k=1000,power=1",
    "binomial:k=1000,success=0.3",
    "geometric:k=1000,success=0.9",
    "poisson:k=1000,mean=300",
    "dirichlet:k=1000,alpha=1",
    "dirichlet:k=1000,alpha=0.5",
)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propamp", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run the experiment grid")
    b.add_argument("--config", default=None,
                   help="optional flat key=value file; keys mirror the long "
                        "flags (n and estimators comma-separated, family "
                        "semicolon-separated); explicit flags win")
    b.add_argument("--property", default="entropy",
                   choices=["entropy", "l1", "support_size", "coverage"])
    b.add_argument("--family", action="append", default=None,
                   help="family spec like zipf:k=1000,power=1 (repeatable; "
                        "default: the nine benchmark families at k=1000)")
    b.add_argument("--n", type=int, nargs="+", default=list(bench_mod.DEFAULT_N_GRID),
                   help="sample-size grid (ascending)")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--estimators", nargs="+", default=list(bench_mod.ESTIMATORS[:4]),
                   choices=list(bench_mod.ESTIMATORS))
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--epsilon", type=float, default=1.0,
                   help="amplification parameter (entropy/l1); size and "
                        "coverage cap it at e^-2")
    b.add_argument("--c-l", type=float, default=DEFAULT_C_L)
    b.add_argument("--c-s", type=float, default=DEFAULT_C_S)
    b.add_argument("--amplification", default="oracle",
                   help="'oracle' (uses the true property value), "
                        "'auto' (data-driven plug-in), or an explicit number")
    b.add_argument("--m", type=int, default=2000, help="coverage horizon")
    b.add_argument("--q-family", default=None,
                   help="reference distribution for l1 (family spec); "
                        "default uniform on the first family's alphabet")
    b.add_argument("--format", default="csv", choices=["csv", "json"])
    b.add_argument("--out", default="-", help="output path ('-' = stdout)")

    e = sub.add_parser("estimate", help="one-shot estimate from a count file")
    e.add_argument("--property", required=True,
                   choices=["entropy", "l1", "support_size", "coverage"])
    e.add_argument("--counts", required=True, help="file with one count per line")
    e.add_argument("--probe", default=None,
                   help="independent probe count file (competitive entropy/l1)")
    e.add_argument("--estimator", default="competitive",
                   choices=["empirical", "competitive", "competitive-refined"])
    e.add_argument("--n", type=int, default=None,
                   help="nominal budget (default: total of counts)")
    e.add_argument("--epsilon", type=float, default=None)
    e.add_argument("--c-l", type=float, default=DEFAULT_C_L)
    e.add_argument("--c-s", type=float, default=DEFAULT_C_S)
    e.add_argument("--a", type=float, default=None, help="amplification (size/coverage)")
    e.add_argument("--r", type=float, default=None, help="smoothing Poisson parameter")
    e.add_argument("--m", type=int, default=None, help="coverage horizon")
    e.add_argument("--q-family", default=None, help="l1 reference family spec")

    d = sub.add_parser("diagnose", help="amplified-polynomial diagnostic dump")
    d.add_argument("--n", type=int, default=10000)
    d.add_argument("--epsilon", type=float, default=1.0)
    d.add_argument("--c-l", type=float, default=DEFAULT_C_L)
    d.add_argument("--c-s", type=float, default=DEFAULT_C_S)
    d.add_argument("--grid", type=int, default=512)
    d.add_argument("--refined", action="store_true")
    d.add_argument("--remez", action="store_true")
    d.add_argument("--out", default="-")

    s = sub.add_parser("selftest", help="run the quick invariant oracles")
    s.add_argument("--seed", type=int, default=1)
    return p


def _read_counts(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        vals = [int(line.strip()) for line in fh if line.strip()]
    if any(v < 0 for v in vals):
        raise ValueError("counts must be nonnegative")
    return np.asarray(vals, dtype=np.int64)


_CONFIG_KEYS = {
    "property": str, "trials": int, "seed": int, "epsilon": float,
    "c_l": float, "c_s": float, "m": int, "amplification": str,
    "format": str, "out": str, "q_family": str,
}


def _apply_config_file(args, parser_defaults) -> None:
    """Fill bench args from a flat key=value file; explicit flags win."""
    with open(args.config, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{args.config}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            key, val = key.strip().replace("-", "_"), val.strip()
            if key == "n":
                parsed = [int(v) for v in val.replace(",", " ").split()]
            elif key == "family":
                parsed = [v.strip() for v in val.split(";") if v.strip()]
            elif key == "estimators":
                parsed = [v.strip() for v in val.split(",") if v.strip()]
            elif key in _CONFIG_KEYS:
                parsed = _CONFIG_KEYS[key](val)
            else:
                raise ValueError(f"{args.config}:{lineno}: unknown config key {key!r}")
            if getattr(args, key, None) == parser_defaults.get(key):
                setattr(args, key, parsed)


def _cmd_bench(args) -> int:
    if args.config:
        defaults = {
            "property": "entropy", "family": None,
            "n": list(bench_mod.DEFAULT_N_GRID), "trials": 100,
            "estimators": list(bench_mod.ESTIMATORS[:4]), "seed": 1,
            "epsilon": 1.0, "c_l": DEFAULT_C_L, "c_s": DEFAULT_C_S,
            "amplification": "oracle", "m": 2000, "q_family": None,
            "format": "csv", "out": "-",
        }
        _apply_config_file(args, defaults)
    families = args.family or list(DEFAULT_FAMILIES)
    q = None
    if args.property == "l1":
        if args.q_family:
            q = parse_family_spec(args.q_family, rng=np.random.default_rng(args.seed))
        else:
            k = parse_family_spec(families[0], rng=np.random.default_rng(args.seed)).k
            q = parse_family_spec(f"uniform:k={k}")
    spec = PropertySpec(
        kind=args.property,
        q=q,
        m=args.m if args.property == "coverage" else None,
    )
    amplification = args.amplification
    if amplification not in ("oracle", "auto"):
        amplification = float(amplification)
    plan = bench_mod.ExperimentPlan(
        spec=spec,
        families=families,
        n_grid=list(args.n),
        trials=args.trials,
        estimators=list(args.estimators),
        master_seed=args.seed,
        config=EstimatorConfig(epsilon=args.epsilon, c_l=args.c_l, c_s=args.c_s),
        amplification=amplification,
    )
    records = bench_mod.run_experiment(plan)
    text = bench_mod.emit_results(records, format=args.format)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_estimate(args) -> int:
    counts = _read_counts(args.counts)
    n = args.n if args.n is not None else int(counts.sum())
    if n < 1:
        raise ValueError("need a positive budget n (empty sample and no --n)")
    q = None
    if args.property == "l1":
        if not args.q_family:
            raise ValueError("l1 estimation needs --q-family")
        q = parse_family_spec(args.q_family)

    if args.estimator == "empirical":
        spec = PropertySpec(kind=args.property, q=q,
                            m=args.m if args.property == "coverage" else None)
        value = empirical_estimate(spec, counts, n)
        print(format(value, ".9g"))
        return 0

    eps_default = 1.0 if args.property in ("entropy", "l1") else math.exp(-2.0)
    cfg = EstimatorConfig(
        epsilon=args.epsilon if args.epsilon is not None else eps_default,
        c_l=args.c_l,
        c_s=args.c_s,
        r=args.r,
        a=args.a,
        m=args.m,
        refined=(args.estimator == "competitive-refined"),
    )
    if args.property in ("entropy", "l1"):
        if args.probe is None:
            raise ValueError("competitive entropy/l1 needs --probe (independent sample)")
        probe = _read_counts(args.probe)
        if args.property == "entropy":
            value = competitive_entropy(counts, probe, n, cfg).value
        else:
            value = competitive_l1(counts, probe, n, q, cfg).value
    else:
        if cfg.a is None:
            raise ValueError("size/coverage estimation needs --a (try 1 for plug-in)")
        fp = fingerprint(counts)
        if args.property == "support_size":
            value = competitive_support_size(fp, cfg).value
        else:
            if cfg.m is None:
                raise ValueError("coverage estimation needs --m")
            value = competitive_coverage(fp, n, cfg).value
    print(format(value, ".9g"))
    return 0


def _cmd_diagnose(args) -> int:
    params = AmplificationParams(n=args.n, epsilon=args.epsilon, c_l=args.c_l, c_s=args.c_s)
    build = build_refined_entropy_poly if args.refined else build_amplified_entropy_poly
    poly = build(params, remez=args.remez, diag_grid=0)
    prof = entropy_poly_error_profile(poly, params, n_grid=args.grid)
    lines = ["x,poly,bernstein"]
    for x, pv, bv in zip(prof["x"], prof["poly"], prof["bernstein"]):
        lines.append(f"{x:.9g},{pv:.9g},{bv:.9g}")
    lines.append("")
    text = "\n".join(lines)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(f"# degree={poly.degree} sup_abs={prof['sup_abs']:.6g} "
          f"sup_ratio={prof['sup_ratio']:.6g}", file=sys.stderr)
    return 0


def _cmd_selftest(args) -> int:
    from . import selftest

    failures = selftest.run(seed=args.seed)
    return 1 if failures else 0


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "estimate":
            return _cmd_estimate(args)
        if args.command == "diagnose":
            return _cmd_diagnose(args)
        if args.command == "selftest":
            return _cmd_selftest(args)
        raise AssertionError(args.command)
    except (ValueError, OSError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
