"""L1 distance between consecutive refinements of the toll gate.

Inside a fan the distance halves with each level. Between the two fans
(around t = 10) every level gives the same solution.

Run:  python3 demos/convergence.py
"""
from ptwft.cli import converge
from ptwft.scenario import parse_scenario, tollgate_text

sc = parse_scenario(tollgate_text(), "tollgate")
sc.window = (-10.0, 10.0)
for T in (5.0, 10.0, 18.0):
    sc.t_end = T
    rows = converge(sc, [3, 4, 5, 6, 7])
    dist = [r["l1_to_next"] for r in rows[:-1]]
    print(f"T = {T:4g}: " + "  ".join(f"{d:.3e}" for d in dist))
