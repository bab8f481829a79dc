#!/usr/bin/env python3
"""Empirical failure rate of the Monte Carlo gap estimator vs its guarantee.

For each epsilon the estimator promises |estimate - gap/2^n| <= eps with
probability >= 1 - delta; this sweep measures how often seeded runs actually
miss, which should stay well below delta.

Example:
    python scripts/mc_calibration.py --n 14 --trials 200 --delta 0.05
"""

import argparse

from f2gap import gap_bruteforce, gap_monte_carlo, random_poly


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=14)
    ap.add_argument("--poly-seed", type=int, default=1)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--delta", type=float, default=0.05)
    ap.add_argument(
        "--eps", type=float, nargs="+", default=[0.2, 0.1, 0.05, 0.02]
    )
    args = ap.parse_args()

    f = random_poly(args.n, 3, seed=args.poly_seed)
    truth = gap_bruteforce(f) / 2.0**args.n
    print(f"polynomial: n={args.n} terms={len(f.terms)} gap/2^n={truth:+.6f}")
    print(f"{'eps':>8} {'samples':>9} {'failures':>9} {'rate':>8} {'delta':>8}")
    for eps in args.eps:
        failures = 0
        samples = None
        for seed in range(args.trials):
            est = gap_monte_carlo(f, eps, args.delta, seed=seed)
            samples = est.samples
            if abs(est.normalized_estimate - truth) > eps:
                failures += 1
        rate = failures / args.trials
        print(
            f"{eps:>8.3f} {samples:>9} {failures:>9} {rate:>8.3f} {args.delta:>8.3f}"
        )


if __name__ == "__main__":
    main()
