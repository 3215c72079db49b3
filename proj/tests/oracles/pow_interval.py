#!/usr/bin/env python3
"""99% interval for the mean of 200 geometric(1/256) attempt counts.

Total attempts over N headers is N + NegBin(N, p) failures, so the
interval is exact rather than a normal approximation.
"""
from scipy.stats import nbinom

N, p = 200, 1.0 / 256
lo = (nbinom.ppf(0.005, N, p) + N) / N
hi = (nbinom.ppf(0.995, N, p) + N) / N
print(f"mean attempts 99% interval: [{lo:.3f}, {hi:.3f}] expected {1/p:.0f}")
