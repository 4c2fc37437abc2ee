import math

import pytest

from conftest import tollgate_datum
from ptwft.constraint import build_constraint
from ptwft.entropy import (dissipation, entropy_E, entropy_Q, k_ladder, n_flux, ns_flux_property,
                           rh_check, rs_bound_constant, wave_dissipation)
from ptwft.grid import PiecewiseConstant, build_grid
from ptwft.model import State
from ptwft.riemann import Wave, WaveKind
from ptwft.wft import simulate

T_L = 24.47164233868628


@pytest.fixture(scope="module")
def tollgate_run(P, data, grid6):
    return simulate(tollgate_datum(P), grid6, data, 60.0)


def test_entropy_pair_branches(P):
    u = State(0.3, 1.1)
    assert entropy_E(u, 0.2, P) == 0.0 and entropy_Q(u, 0.2, P) == 0.0
    assert entropy_E(u, 0.0, P) == 0.0
    # (rho, v) = (R, 0), k = V: R / p^-1(w^+ - V) - 1 = R / rho^+ - 1
    top = State(0.0, 1.2)
    assert entropy_E(top, 0.6, P) == pytest.approx(math.sqrt(1.2) / math.sqrt(0.6) - 1.0)
    assert entropy_Q(top, 0.6, P) == pytest.approx(-0.6)
    # a free-low state uses the capped marker w^-
    f = State(0.6, 0.5)
    assert entropy_E(f, 0.6, P) == 0.0


def test_n_flux(P, data):
    d0 = build_constraint(0.0, P)
    assert n_flux(State(0.3, 1.1), 0.4, d0) == 0.4
    assert n_flux(P.vacuum, 0.4, data) == 0.0
    # bracket negative at small k
    assert n_flux(State(0.3, 1.1), 1e-3, data) == 0.0
    u = data.hat_u(1.2)
    k = 0.5
    expected = data.F * (k / data.F - 1.0 / math.sqrt(1.2 - k))
    assert n_flux(u, k, data) == pytest.approx(max(expected, 0.0))


def test_contact_dissipation_is_zero(P):
    cd = Wave(State(0.3, 1.2), State(0.3, 1.05), WaveKind.CD, 0.3)
    for k in (0.1, 0.3, 0.45, 0.6):
        assert abs(wave_dissipation(cd, k, P)) <= 1e-14


def test_shock_dissipation_positive(P):
    a, b = State(0.6, 1.2), State(0.0, 1.2)
    s = Wave(a, b, WaveKind.S, P.lam(a, b))
    assert all(wave_dissipation(s, k, P) > 0 for k in (0.05, 0.3, 0.59))
    # at k = v_- the value reduces to the RH residual divided by rho_-
    assert abs(wave_dissipation(s, 0.6, P)) <= 1e-15


def test_rs_lower_bound(P):
    a, b = State(0.1, 1.2), State(0.2, 1.2)
    rs = Wave(a, b, WaveKind.RS, P.lam(a, b))
    m = rs_bound_constant(P)
    # max |rho p'| = 2 R^2 = 2.4 on [rho^-, R]; m = 4.8 / rho^-
    assert m == pytest.approx(4.8 / math.sqrt(0.4), rel=1e-9)
    val = wave_dissipation(rs, 0.15, P)
    assert val < 0
    assert val >= -m * (P.rho(a) - P.rho(b))


def test_rh_check(P, tollgate_run):
    rep = rh_check(tollgate_run)
    assert rep.ok and rep.max_rh1 <= 1e-12
    assert max(rep.ns_rh2) > 1e-3        # the marker drops across the NS


def test_dissipation_signs(tollgate_run):
    rep = dissipation(tollgate_run)
    assert rep.ok
    mins = rep.min_by_kind()
    assert abs(mins["CD"]) <= 1e-10 and mins["PT"] >= -1e-10
    assert all(mdq <= 1e-10 and tot >= -1e-10 for _, mdq, tot in rep.ns_records)


def test_ns_flux_property(tollgate_run, data):
    rep = ns_flux_property(tollgate_run)
    assert rep.ok
    assert len(rep.ns_intervals) == 1
    a, b = rep.ns_intervals[0]
    assert a == 0.0 and b == pytest.approx(T_L, abs=1e-10)


def test_ns_flux_property_d1_run(P, data, grid6):
    u = grid6.project_state(State(0.6, 0.5))
    d = PiecewiseConstant([2.0], [u, P.vacuum])
    rep = ns_flux_property(simulate(d, grid6, data, 5.0))
    assert rep.ns_intervals == [] and rep.ok


def test_zero_flux_run(P):
    d0 = build_constraint(0.0, P)
    g = build_grid(3, d0)
    d = PiecewiseConstant([-2.0], [P.vacuum, State(0.6, 1.2)])
    tr = simulate(d, g, d0, 20.0)
    rep = ns_flux_property(tr)
    assert rep.ok and rep.max_excess <= 1e-12
    for t in (1.0, 5.0, 15.0):
        left, right = tr.traces(t)
        assert P.flux(left) == 0.0 and P.flux(right) == 0.0


def test_k_ladder(grid6):
    ks = k_ladder(grid6)
    assert len(ks) == 2 * len(grid6.v_values) - 1
    assert ks[0] == 0.0 and ks[-1] == 0.6
