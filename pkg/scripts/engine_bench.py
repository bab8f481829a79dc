#!/usr/bin/env python3
"""Time the exact gap engines against each other on random polynomials.

Example:
    python scripts/engine_bench.py --max-n 22 --per-size 5 --seed 0
"""

import argparse
import random
import time

from f2gap import (
    BudgetError,
    InconclusiveError,
    Poly,
    find_hitting_set,
    gap_auto,
    gap_bruteforce,
    gap_hitting,
    gap_via_minimization,
)


def sparse_cubic(n: int, n_cubics: int, seed: int) -> Poly:
    rng = random.Random(seed)
    monomials = [rng.sample(range(1, n + 1), 3) for _ in range(n_cubics)]
    monomials += [rng.sample(range(1, n + 1), 2) for _ in range(n)]
    return Poly.from_terms(n, monomials)


def timed(fn):
    t0 = time.perf_counter()
    try:
        value = fn()
    except (BudgetError, InconclusiveError):
        return None, time.perf_counter() - t0
    return value, time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=22)
    ap.add_argument("--min-n", type=int, default=8)
    ap.add_argument("--cubics", type=int, default=8)
    ap.add_argument("--per-size", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>4} {'brute':>10} {'hitting':>10} {'minimize':>10} {'auto':>10}")
    for n in range(args.min_n, args.max_n + 1, 2):
        rows = []
        for k in range(args.per_size):
            f = sparse_cubic(n, args.cubics, seed=args.seed + 1000 * n + k)
            g_brute, t_brute = timed(lambda: gap_bruteforce(f))
            g_hit, t_hit = timed(lambda: gap_hitting(f, find_hitting_set(f)))
            g_min, t_min = timed(lambda: gap_via_minimization(f))
            g_auto, t_auto = timed(lambda: gap_auto(f))
            for g in (g_hit, g_min, g_auto):
                if g is not None and g_brute is not None and g != g_brute:
                    raise SystemExit(f"engine disagreement at n={n} seed={k}")
            rows.append((t_brute, t_hit, t_min, t_auto))
        avg = [sum(col) / len(col) for col in zip(*rows)]
        print(f"{n:>4} " + " ".join(f"{t * 1e3:>8.2f}ms" for t in avg))


if __name__ == "__main__":
    main()
