#!/usr/bin/env python3
"""Run every pre-wired example family and print a one-line summary each.

Usage: python scripts/run_builtin_examples.py [--samples N] [--seed S] [--workers W]

Smaller default sizes than the acceptance battery so the whole sweep stays
under a couple of minutes; pass --full for the acceptance-scale sizes.
"""
import argparse
import sys

from monostar.experiment import builtin_example, builtin_names, run_experiment

QUICK_SIZES = {
    "star": 400,
    "star-union": 800,
    "star-union-shifted": 200,
    "regular": 400,
    "bipartite": 40,
    "complete": 60,
    "figure2": 120,
    "tadpole-remark": 2000,
    "er": 1500,
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=50_000)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--full", action="store_true",
                    help="acceptance-scale family sizes (slow)")
    args = ap.parse_args()

    worst = 0.0
    failures = []
    for name in builtin_names():
        n = None if args.full else QUICK_SIZES[name]
        spec = builtin_example(name, n=n, samples=args.samples,
                               seed=args.seed, workers=args.workers)
        report = run_experiment(spec)
        if report.failed:
            failures.append(name)
            print(f"{name:20s} FAILED: {report.error}")
            continue
        tv = report.tv_to_reference["limit-law"]
        tol = report.tolerance["limit-law"]
        flag = "ok " if tv <= tol else "OVER"
        worst = max(worst, tv / tol)
        print(f"{name:20s} {flag} tv={tv:.4f} (tol {tol})  "
              f"mean_emp={report.empirical['mean']:.4f} "
              f"mean_T={report.graph['mean_T']:.4f}  "
              f"runtime={report.runtime_seconds:.1f}s")
        for w in report.warnings:
            print(f"{'':20s}  note: {w}")
    print(f"worst tv/tolerance ratio: {worst:.2f}")
    if failures:
        print(f"failed: {failures}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
