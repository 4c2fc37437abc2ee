"""Shared randomized campaign: 100 scenarios cycling through the four F regimes."""
import functools
import math
import time

from ptwft.campaign import REGIMES, random_case
from ptwft.wft import simulate

SEEDS = range(100)


@functools.lru_cache(maxsize=None)
def campaign():
    """[(case, trajectory)] and the wall time spent simulating."""
    out = []
    t0 = time.perf_counter()
    for seed in SEEDS:
        case = random_case(seed, regime=REGIMES[seed % 4])
        traj = simulate(case.datum, case.grid, case.data, math.inf, strict=False)
        out.append((case, traj))
    return out, time.perf_counter() - t0
