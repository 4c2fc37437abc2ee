import math

import pytest

from ptwft.constraint import build_constraint
from ptwft.grid import build_grid
from ptwft.model import State
from ptwft.riemann import (WaveKind, check_wave, eval_fan, l1_distance, solve, solve_constrained,
                           solve_grid, solve_grid_constrained, traces)


def kinds(fan):
    return [w.kind for w in fan.waves]


def test_identical_states(P):
    assert solve(State(0.3, 1.1), State(0.3, 1.1), P).waves == ()


def test_free_free_contact(P):
    fan = solve(State(0.6, 0.3), State(0.6, 1.1), P)
    assert kinds(fan) == [WaveKind.CD] and fan.waves[0].speed == 0.6


def test_congested_shock_then_contact(P):
    fan = solve(State(0.6, 1.2), State(0.0, 1.0), P)
    assert kinds(fan) == [WaveKind.S, WaveKind.CD]
    s, cd = fan.waves
    assert s.right == State(0.0, 1.2)
    assert s.speed == pytest.approx(-1.4485281374238574, abs=1e-14)
    assert cd.speed == 0.0


def test_congested_rarefaction(P):
    fan = solve(State(0.0, 1.2), P.vacuum, P)
    assert kinds(fan) == [WaveKind.RAR, WaveKind.CD]
    rar = fan.waves[0]
    assert (rar.speed, rar.speed_r) == pytest.approx((-2.4, -0.6))
    # inside the fan v - 2 (w - v) = xi
    u = eval_fan(fan, -1.5)
    assert 3 * u.v - 2.4 == pytest.approx(-1.5)
    assert u.w == 1.2


def test_phase_transition(P):
    fan = solve(State(0.6, 0.5), State(0.3, 1.1), P)
    assert kinds(fan) == [WaveKind.PT, WaveKind.CD]
    # (f_m - f_l) / (rho_m - rho_l) with rho_l = rho^-/2, rho_m = sqrt(0.7)
    assert fan.waves[0].speed == pytest.approx(0.11771243444677047, abs=1e-14)
    assert fan.waves[0].right == State(0.3, 1.0)


def test_vacuum_phase_transition_single_wave(P):
    fan = solve(P.vacuum, State(0.0, 1.0), P)
    assert kinds(fan) == [WaveKind.PT] and fan.waves[0].speed == 0.0


def test_constrained_tollgate_pair(P, data):
    fan = solve_constrained(State(0.0, 1.2), P.vacuum, data)
    assert kinds(fan) == [WaveKind.RAR, WaveKind.NS, WaveKind.CD]
    ns = fan.waves[1]
    assert ns.left == pytest.approx(State(0.3833236714878414, 1.2), abs=1e-13)
    assert ns.right == pytest.approx(State(0.6, 0.9128709291752769), abs=1e-13)
    left, right = traces(fan)
    assert P.flux(left) == pytest.approx(data.F) and P.flux(right) == pytest.approx(data.F)
    check_wave(ns, P, data.F)


def test_constrained_D1_is_unconstrained(P, data):
    a, b = State(0.6, 0.5), State(0.3, 1.1)
    assert data.in_D1(a, b)
    assert solve_constrained(a, b, data).waves == solve(a, b, P).waves


def test_grid_rs_fan_count(P, data):
    # RS from v = 0 to v_F^- on the grid: the lowest v band has 2^n intervals
    for n in (2, 4, 6):
        g = build_grid(n, data)
        fan = solve_grid_constrained(State(0.0, 1.2), P.vacuum, g, data)
        ks = kinds(fan)
        assert ks.count(WaveKind.RS) == 2 ** n
        assert ks[-2:] == [WaveKind.NS, WaveKind.CD]
        for wv in fan.waves:
            check_wave(wv, P, data.F)
            assert g.is_node(wv.left) and g.is_node(wv.right)
        speeds = [wv.speed for wv in fan.waves]
        assert speeds == sorted(speeds)


def test_grid_solver_exact_on_shock(P, data):
    g = build_grid(3, data)
    a, b = State(0.6, 1.2), State(0.0, 1.2)
    assert solve_grid(a, b, g).waves == solve(a, b, P).waves


def test_fan_chains_and_RH(P, data):
    g = build_grid(4, data)
    nodes = g.states()[::7]
    for a in nodes:
        for b in nodes:
            for fan in (solve_grid(a, b, g), solve_grid_constrained(a, b, g, data)):
                st = fan.states()
                assert st[0] == a and st[-1] == b
                for wv, l, r in zip(fan.waves, st[:-1], st[1:]):
                    assert (wv.left, wv.right) == (l, r)
                    check_wave(wv, P, data.F)
                sp = [w.speed for w in fan.waves]
                assert all(x <= y + 1e-12 for x, y in zip(sp[:-1], sp[1:]))


def test_l1_distance(P):
    fa = solve(State(0.6, 0.3), State(0.6, 1.1), P)
    assert l1_distance(fa, fa) == 0.0
    fb = solve(State(0.6, 0.3), State(0.6, 1.0), P)
    # the two fans differ on (0.6, 1] only: |rho| difference sqrt(0.5) - sqrt(0.4)
    assert l1_distance(fa, fb) == pytest.approx(0.4 * (math.sqrt(0.5) - math.sqrt(0.4)), abs=1e-12)


def test_top_regime_never_constrains(P):
    top = build_constraint(P.f_c_plus, P)
    a, b = State(0.0, 1.2), P.vacuum
    assert solve_constrained(a, b, top).waves == solve(a, b, P).waves
