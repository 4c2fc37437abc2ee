"""Randomized stress campaign: interaction rows, Temple functional decrease, errata.

Run:  python3 demos/campaign_stats.py [seeds]
"""
import math
import sys
from collections import Counter

from ptwft.campaign import REGIMES, random_case
from ptwft.wft import simulate

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 100
rows, status = Counter(), Counter()
worst = -math.inf
for seed in range(seeds):
    case = random_case(seed, regime=REGIMES[seed % 4])
    traj = simulate(case.datum, case.grid, case.data, math.inf, strict=False)
    for r in traj.records:
        rows[r.table_row] += 1
        status[r.status] += 1
        worst = max(worst, r.delta_T)
print(f"{sum(rows.values())} interactions over {seeds} runs; largest change of T_n: {worst:.3e}")
print("statuses: " + ", ".join(f"{k} {v}" for k, v in sorted(status.items())))
for row, c in rows.most_common():
    print(f"  {row:12s} {c}")
