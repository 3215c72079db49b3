#!/usr/bin/env python3
"""Independent Monte-Carlo model of the FPC voting rule.

Estimates the honest-agreement rate for the acceptance configuration
(n=50, k=10, 10% minority-maximizing adversaries, 90% of all nodes
initially "yes" so every honest node starts "yes", default threshold band
and ell). Uses Python's own PRNG,
so it checks the statistical claim, not the C++ byte stream.
"""
import argparse
import random


def run(rng, n, k, adversaries, yes_frac, lo, hi, ell, max_rounds):
    honest = n - adversaries
    n_yes = min(honest, int(yes_frac * n + 0.5))
    opinion = [i < n_yes for i in range(honest)] + [False] * adversaries
    is_honest = [i < honest for i in range(n)]
    finalized = [False] * n
    stable = [0] * n
    for _ in range(max_rounds):
        if all(finalized[i] for i in range(honest)):
            break
        theta = rng.uniform(lo, hi)
        hy = sum(opinion[i] for i in range(honest))
        minority = hy < honest - hy
        snapshot = list(opinion)
        updates = {}
        for i in range(honest):
            if finalized[i]:
                continue
            sample = rng.sample(range(n), min(k, n))
            yes = 0
            for j in sample:
                yes += snapshot[j] if is_honest[j] else minority
            updates[i] = yes >= theta * len(sample)
        for i, nxt in updates.items():
            stable[i] = stable[i] + 1 if nxt == opinion[i] else 1
            opinion[i] = nxt
            if stable[i] >= ell:
                finalized[i] = True
    vals = {opinion[i] for i in range(honest)}
    return len(vals) == 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=20261015)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    ok = sum(run(rng, 50, 10, 5, 0.9, 0.55, 0.75, 3, 100) for _ in range(args.runs))
    rate = ok / args.runs
    print(f"agreement {ok}/{args.runs} = {rate:.4f}")
    # Probability that >= 99 of 100 independent runs agree.
    from math import comb
    p99 = sum(comb(100, j) * rate**j * (1 - rate) ** (100 - j) for j in range(99, 101))
    print(f"P(>=99/100 agree) = {p99:.6f}")


if __name__ == "__main__":
    main()
