#!/usr/bin/env python3
"""Where does the full-idle alternation beat honest mining?

The region is x*(1 - x) > y, with x the miner's share of total hash power
and y the share of fixed costs in its total costs.  This prints the boundary
curve, the minimal profitable power share for a few cost structures, and a
couple of reference points.
"""

import numpy as np

from smartmining import dominance, min_power_for_profit, smart_utility
from smartmining.analytic import _canonical

print("boundary of strict profitability: x*(1 - x) = y")
print(f"{'y':>6} {'min share x*':>12}")
for y in (0.0, 0.02, 0.05, 0.10, 0.15, 0.20, 0.24):
    print(f"{y:>6.2f} {min_power_for_profit(y):>12.4f}")
print("y >= 0.25: no power share suffices (the parabola tops out at 1/4)")

print("\nreference points:")
for x, y in ((0.12, 0.10), (0.20, 0.15), (0.05, 0.10), (0.01, 0.0001)):
    ctx, miner = _canonical(x, y)
    u = smart_utility(ctx, miner)
    verdict = "beats honest" if dominance(x, y) else "does not pay"
    print(f"  power share {x:>5.2%}, fixed-cost share {y:>6.2%}: "
          f"utility {u:+.2e} -> {verdict}")

# A coarse picture of the region ('#' = profitable).
print("\nregion map (x right 0.05..0.95, y up 0.00..0.30):")
ys = np.arange(0.30, -0.001, -0.03)
xs = np.arange(0.05, 0.951, 0.03)
for y in ys:
    row = "".join("#" if x * (1 - x) > y else "." for x in xs)
    print(f"  y={y:4.2f} {row}")
