"""Toll gate: a queue reaches a gate of capacity sqrt(3)/5 and eventually clears.

Run:  python3 demos/tollgate.py [n]
"""
import math
import sys

from ptwft.entropy import ns_flux_property
from ptwft.scenario import parse_scenario, tollgate_text
from ptwft.wft import simulate

n = int(sys.argv[1]) if len(sys.argv) > 1 else 6
sc = parse_scenario(tollgate_text(), "tollgate")
grid = sc.grid(n)
traj = simulate(sc.datum(grid), grid, grid.data, sc.t_end, strict=False)
P = traj.params

print(f"n = {n}, F = {grid.data.F:.6f} ({grid.data.regime.name}), v_F- = {grid.data.v_F_minus:.6f}, "
      f"v_F+ = {grid.data.v_F_plus:.6f}")
print(f"{len(traj.records)} interactions, T_n: {traj.series[0][2]:.4f} -> {traj.series[-1][2]:.4f}")

# named events
G = next(r for r in traj.records if r.table_row == "CD-NS_F^-")
L = next(r for r in traj.records if r.table_row == "PT-NS_0")
cd = [r for r in traj.records if r.table_row == "CD-RS"]
pt = [r for r in traj.records if r.table_row == "PT-RS"]
pre, post = [r for r in pt if r.time < G.time], [r for r in pt if r.time > G.time]
for name, r in zip("CDEFGHIL", [cd[0], pre[0], cd[-1], pre[-1], G, post[0], post[-1], L]):
    print(f"  {name}  t = {r.time:9.4f}  x = {r.location:8.4f}  {r.table_row:10s} d# = {r.delta_sharp}")

rho_l, rho_r = P.pressure.inv(P.w_minus), P.pressure.inv(P.w_plus)
t_L = (3.0 * rho_l + 5.0 * rho_r) / grid.data.F
print(f"gate opens at t = {L.time:.10f}; mass balance gives {t_L:.10f}")

rep = ns_flux_property(traj)
print("stationary shock active on " + ", ".join(f"[{a:.4f}, {b:.4f}]" for a, b in rep.ns_intervals))
print(f"max flux at the gate minus F: {rep.max_excess:.2e}")

print("\n   x " + "".join(f"   t={t:<5g}" for t in (5, 10, 20, 30)))
for x in (-6.0, -4.0, -2.0, -0.5, 0.5, 2.0, 6.0, 12.0):
    row = [P.rho(traj.sample(t, [x])[0]) for t in (5.0, 10.0, 20.0, 30.0)]
    print(f"{x:5.1f} " + "".join(f"   {r:8.4f}" for r in row))
print("(density; the queue sits left of the gate until t =", f"{L.time:.2f})")
assert math.isclose(L.time, t_L, abs_tol=1e-9)
