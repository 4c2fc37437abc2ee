"""One Riemann problem per wave family, with and without the gate constraint.

Run:  python3 demos/riemann_gallery.py
"""
import math

from ptwft.constraint import build_constraint
from ptwft.model import ModelParams, PowerLaw
from ptwft.riemann import solve, solve_constrained, traces

P = ModelParams(0.6, 1.0, 1.2, PowerLaw(2.0))
data = build_constraint(math.sqrt(3.0) / 5.0, P)
cases = {
    "contact between free states": (P.make_state(0.6, 0.4), P.make_state(0.6, 0.9)),
    "shock then contact": (P.make_state(0.5, 1.1), P.make_state(0.1, 1.0)),
    "rarefaction": (P.make_state(0.1, 1.1), P.make_state(0.5, 1.1)),
    "phase transition": (P.make_state(0.6, 0.5), P.make_state(0.3, 1.0)),
    "vacuum into queue": (P.vacuum, P.make_state(0.0, 1.2)),
    "queue behind the gate": (P.make_state(0.6, 1.2), P.make_state(0.6, 1.2)),
}
for name, (ul, ur) in cases.items():
    print(f"{name}: {ul!r} | {ur!r}")
    for label, fan in (("unconstrained", solve(ul, ur, P)), ("gate", solve_constrained(ul, ur, data))):
        a, b = traces(fan)
        print(f"  {label:13s} flux at 0-/0+ = {P.flux(a):.4f}/{P.flux(b):.4f}")
        for wv in fan.waves:
            print(f"    {wv}")
