"""Survival curves of the Mittag-Leffler waiting-time family.

Prints E_a(-t^a) over a time grid for several orders.  At a = 1 the
curve is plain exponential decay; smaller orders start steeper (many
short waits) yet end far flatter (a power-law tail of long waits),
which is the signature handed to every heavy-tailed stream downstream.
"""

import numpy as np

from ctstat import ml_survival

orders = (0.3, 0.6, 0.9, 1.0)
times = np.array([0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0])

header = "t".rjust(8) + "".join(f"   a={a:<6}" for a in orders)
print(header)
print("-" * len(header))
for t in times:
    cells = "".join(f"  {ml_survival(a, t):9.6f}" for a in orders)
    print(f"{t:8.2f}{cells}")

print()
print("tail ratio to the exponential at t = 50:")
for a in orders[:-1]:
    ratio = ml_survival(a, 50.0) / ml_survival(1.0, 50.0)
    print(f"  a={a}: {ratio:.3g}x more mass still waiting")
