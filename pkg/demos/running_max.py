"""The largest jump seen so far, and how its law ages with the stream.

For a memoryless stream the maximum's cdf is the classical
double-exponential form; under heavy-tailed waits the same geometric
mixing runs over a fractional count and produces a visibly slower
record growth.  Printed: threshold curves at a few horizons, then the
median record level as a function of time.
"""

import numpy as np

from ctstat import ExponentialJumps, max_cdf

jumps = ExponentialJumps(1.0)
ws = np.array([0.5, 1.0, 2.0, 3.0, 5.0])

for t in (1.0, 10.0, 100.0):
    plain = max_cdf(1.0, jumps, t, ws)
    heavy = max_cdf(0.6, jumps, t, ws)
    print(f"P(max <= w) at t = {t}")
    print(f"{'w':>6} {'order 1.0':>12} {'order 0.6':>12}")
    for w, a, b in zip(ws, plain, heavy):
        print(f"{w:>6.1f} {a:12.6f} {b:12.6f}")
    print()

print("median record level over time (bisection on w):")


def median_level(order, t):
    lo, hi = 0.0, 60.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if max_cdf(order, jumps, t, mid) < 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


print(f"{'t':>8} {'order 1.0':>12} {'order 0.6':>12}")
for t in (1.0, 10.0, 100.0, 1000.0):
    print(f"{t:>8.0f} {median_level(1.0, t):12.4f} {median_level(0.6, t):12.4f}")
