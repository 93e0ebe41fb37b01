#!/usr/bin/env python3
"""Broad randomized sweep across the whole identity family.

Runs a larger, slower sweep than the CLI default and prints a per-identity
table plus the first counterexample (if any) in JSON.  Exit code 1 on any
non-pass verdict, so this doubles as a soak check.

    python scripts/run_sweep.py --seed 3 --trials 400 --max-n 5
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from jetcheck.cli import emit_report  # noqa: E402
from jetcheck.identities import IDENTITIES, SweepConfig, sweep  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--coeff-bound", type=int, default=5)
    ap.add_argument("--degree-bound", type=int, default=4)
    args = ap.parse_args()

    config = SweepConfig(
        seed=args.seed,
        trials=args.trials,
        max_n=args.max_n,
        max_r=args.max_r,
        coeff_bound=args.coeff_bound,
        degree_bound=args.degree_bound,
    )
    start = time.perf_counter()
    summary = sweep(config)
    elapsed = time.perf_counter() - start

    width = max(len(name) for name in IDENTITIES)
    print(f"{args.trials} trials, seed {args.seed}, {elapsed:.2f}s")
    print(f"{'identity':<{width}}  pass  fail  precondition")
    for name, tally in summary.per_identity.items():
        print(
            f"{name:<{width}}  {tally['pass']:>4}  {tally['fail']:>4}  {tally['precondition_violated']:>12}"
        )
    bad = summary.counts["fail"] + summary.counts["precondition_violated"]
    if summary.first_failure is not None:
        print("\nfirst counterexample:")
        print(emit_report(summary.first_failure, "json"))
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
