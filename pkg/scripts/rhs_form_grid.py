#!/usr/bin/env python3
"""Exhibit where the two exponential-family right-hand forms diverge.

For the two-term instance alpha = (0, 0), beta = 1, c = (-1, 1),
s = (s, n - s), the exact left-hand sum is compared against both offered
right-hand sides: the corrected n!-form and the as_printed multinomial
form.  They coincide exactly when multinomial(n, (s, n-s)) = n!, i.e. when
the parts of s are 0/1-sized; everywhere else only the corrected form
matches the sum.

    python scripts/rhs_form_grid.py --max-n 6
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from jetcheck.identities import exp_family_check  # noqa: E402
from jetcheck.numeric import MultiIndex, Scalar  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    alpha = (Scalar.exact(0), Scalar.exact(0))
    beta = Scalar.exact(1)
    c = (Scalar.exact(-1), Scalar.exact(1))

    print(f"{'n':>2} {'s':>2} {'lhs':>8} {'corrected':>10} {'as_printed':>11}  forms agree")
    diverging = 0
    for n in range(0, args.max_n + 1):
        for s in range(0, n + 1):
            index = MultiIndex((s, n - s))
            corr = exp_family_check(n, alpha, beta, c, index, "corrected")
            printed = exp_family_check(n, alpha, beta, c, index, "as_printed")
            assert corr.verdict == "pass", (n, s)
            agree = printed.verdict == "pass"
            diverging += 0 if agree else 1
            print(
                f"{n:>2} {s:>2} {corr.lhs.as_text():>8} {corr.rhs.as_text():>10} "
                f"{printed.rhs.as_text():>11}  {'yes' if agree else 'NO'}"
            )
    print(f"\n{diverging} cells where only the corrected form matches the exact sum")
    return 0


if __name__ == "__main__":
    sys.exit(main())
