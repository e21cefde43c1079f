"""Event-count distributions for memoryless and heavy-tailed streams.

Side-by-side pmf tables of the number of events by a fixed horizon.
The exponential stream gives the Poisson law; Mittag-Leffler waits
concentrate extra mass at zero counts (a long first wait is likely)
while also fattening the high-count tail.
"""

import numpy as np

from ctstat import Exponential, MittagLeffler, counting_pmf

t = 2.0
poisson = counting_pmf(Exponential(1.0), t, n_max=12)
heavy = counting_pmf(MittagLeffler(0.7), t, n_max=12)

print(f"P(N(t) = n) at t = {t}")
print(f"{'n':>3} {'exp waits':>12} {'ml(0.7) waits':>14}")
for n in range(13):
    print(
        f"{n:>3} {poisson.probabilities[n]:12.6f} {heavy.probabilities[n]:14.6f}"
    )

mean_p = float(np.dot(np.arange(13), poisson.probabilities))
mean_h = float(np.dot(np.arange(13), heavy.probabilities))
print()
print(f"mean count (over the table): {mean_p:.4f} vs {mean_h:.4f}")
print(f"mass beyond the table:       {poisson.tail_bound:.2e} vs {heavy.tail_bound:.2e}")
