"""Property-based checks of the solvers and the grid."""
import math

from hypothesis import given, settings, strategies as st

from ptwft.constraint import build_constraint
from ptwft.grid import build_grid
from ptwft.model import ModelParams, PowerLaw, State
from ptwft.riemann import (WaveKind, check_wave, is_null, solve, solve_constrained, solve_grid_constrained,
                           traces)

P = ModelParams(0.6, 1.0, 1.2, PowerLaw(2.0))
GRIDS = {F: build_grid(3, build_constraint(F, P)) for F in (0.0, 0.2, 0.42, P.f_c_plus)}


@st.composite
def states(draw):
    if draw(st.booleans()):
        return State(P.V, draw(st.floats(0.0, 0.999)))
    return State(draw(st.floats(0.0, P.V)), draw(st.floats(1.0, 1.2)))


fluxes = st.floats(0.0, 1.0).map(lambda s: s * P.f_c_plus)


@settings(max_examples=300, deadline=None)
@given(states(), states())
def test_exact_fan_is_consistent(a, b):
    fan = solve(a, b, P)
    st_ = fan.states()
    # pairs closer than the null-wave tolerance give an empty fan
    assert st_[0] == a and is_null(st_[-1], b)
    lo = -math.inf
    for wv in fan.waves:
        assert wv.speed >= lo - 1e-12
        lo = wv.speed_hi
        if wv.kind is not WaveKind.RAR:
            check_wave(wv, P)


@settings(max_examples=300, deadline=None)
@given(states(), states(), fluxes)
def test_constrained_traces_respect_F(a, b, F):
    data = build_constraint(F, P)
    fan = solve_constrained(a, b, data)
    left, right = traces(fan)
    tol = 1e-10
    assert P.flux(left) <= data.F + tol and P.flux(right) <= data.F + tol
    if any(w.kind is WaveKind.NS for w in fan.waves):
        assert abs(P.flux(left) - data.F) <= tol and abs(P.flux(right) - data.F) <= tol


@settings(max_examples=200, deadline=None)
@given(states(), states(), st.sampled_from(sorted(GRIDS)))
def test_grid_solver_stays_on_grid(a, b, F):
    g = GRIDS[F]
    a, b = g.project_state(a), g.project_state(b)
    fan = solve_grid_constrained(a, b, g, g.data)
    for wv in fan.waves:
        assert g.is_node(wv.left) and g.is_node(wv.right)
        check_wave(wv, P, g.data.F)


@settings(max_examples=300, deadline=None)
@given(states(), st.sampled_from(sorted(GRIDS)))
def test_projection_is_idempotent_floor(u, F):
    g = GRIDS[F]
    p = g.project_state(u)
    assert g.is_node(p) and g.project_state(p) == p
    assert p.w <= u.w + 1e-12
    if u.w >= P.w_minus:
        assert p.v <= u.v + 1e-12
