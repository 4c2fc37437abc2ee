"""Riemann solvers: exact, flux-constrained, and their grid restrictions.

A solution is a self-similar WaveFan: an ordered list of waves in x/t.
The grid solvers replace each 1-rarefaction by a fan of rarefaction
shocks (RS) through consecutive grid speeds at a fixed marker.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .model import DomainError, ModelParams, State

NULL_TOL = 1e-12


class WaveKind(enum.Enum):
    CD = "CD"
    S = "S"
    RS = "RS"
    PT = "PT"
    NS = "NS"
    RAR = "RAR"   # continuous rarefaction, exact solver only


@dataclass(frozen=True)
class Wave:
    left: State
    right: State
    kind: WaveKind
    speed: float
    speed_r: Optional[float] = None   # right edge of a rarefaction

    @property
    def speed_hi(self) -> float:
        return self.speed if self.speed_r is None else self.speed_r

    def __str__(self):
        sp = f"{self.speed:+.6f}"
        if self.kind is WaveKind.RAR:
            sp = f"[{self.speed:+.6f}, {self.speed_r:+.6f}]"
        return (f"{self.kind.value:3s} speed {sp}  "
                f"(v,w) {self.left.v:.6f},{self.left.w:.6f} -> "
                f"{self.right.v:.6f},{self.right.w:.6f}")


@dataclass(frozen=True)
class WaveFan:
    left: State
    right: State
    waves: tuple
    params: ModelParams

    def __len__(self):
        return len(self.waves)

    def __iter__(self):
        return iter(self.waves)

    def states(self):
        """Constant states from left to right."""
        return [self.left] + [wv.right for wv in self.waves]


def is_null(a: State, b: State) -> bool:
    return max(abs(a.v - b.v), abs(a.w - b.w)) < NULL_TOL


# ---------------------------------------------------------------------------
# exact solver

def _rarefaction_state(params: ModelParams, w, rho_lo, rho_hi, xi):
    """Point of the 1-rarefaction on marker w with characteristic speed xi."""
    p = params.pressure

    def c(r):
        return w - p.p(r) - r * p.dp(r) - xi

    # c is decreasing in rho; at a fan edge the sign may be lost to rounding
    c_lo, c_hi = c(rho_lo), c(rho_hi)
    if c_lo * c_hi > 0:
        r = rho_lo if abs(c_lo) < abs(c_hi) else rho_hi
    else:
        r = optimize.brentq(c, rho_lo, rho_hi, xtol=1e-15, rtol=8.9e-16)
    return State(min(w - p.p(r), params.V), w)


def _one_wave(params: ModelParams, u_l: State, u_m: State):
    """Shock or rarefaction between two states of equal marker."""
    if is_null(u_l, u_m):
        return []
    if u_m.v < u_l.v:
        return [Wave(u_l, u_m, WaveKind.S, params.lam(u_l, u_m))]
    lam_l, lam_r = params.char_speed(u_l), params.char_speed(u_m)
    return [Wave(u_l, u_m, WaveKind.RAR, lam_l, lam_r)]


def _contact(u_l: State, u_r: State):
    if is_null(u_l, u_r):
        return []
    return [Wave(u_l, u_r, WaveKind.CD, u_r.v)]


def solve(u_l: State, u_r: State, params: ModelParams) -> WaveFan:
    """Unconstrained Riemann solver with the four phase cases."""
    P = params
    waves = []
    if is_null(u_l, u_r):
        pass
    elif P.in_free(u_l) and P.in_free(u_r):
        waves = [Wave(u_l, u_r, WaveKind.CD, P.V)]
    elif P.in_congested(u_l):
        # congested -> anything: 1-wave to u_*, then 2-contact
        u_m = P.u_star(u_l, u_r)
        waves = _one_wave(P, u_l, u_m) + _contact(u_m, u_r)
    else:
        # free-low -> congested with v < V: phase transition, then 2-contact
        if P.is_vacuum(u_l):
            # the transition and the contact both travel at v_r
            waves = [Wave(u_l, u_r, WaveKind.PT, u_r.v)]
        else:
            u_m = P.v_pm(u_r, "minus")
            waves = [Wave(u_l, u_m, WaveKind.PT, P.lam(u_l, u_m))] + _contact(u_m, u_r)
    return WaveFan(u_l, u_r, tuple(waves), P)


def solve_constrained(u_l: State, u_r: State, data) -> WaveFan:
    """Riemann solver honouring f(u(t, 0+-)) <= F."""
    P = data.params
    if data.in_D1(u_l, u_r):
        return solve(u_l, u_r, P)
    uh = data.hat_u(P.marker(u_l))
    uc = data.check_u(u_r.v)
    left = solve(u_l, uh, P)
    right = solve(uc, u_r, P)
    _check_sides(left, right)
    mid = () if is_null(uh, uc) else (Wave(uh, uc, WaveKind.NS, 0.0),)
    return WaveFan(u_l, u_r, left.waves + mid + right.waves, P)


def _check_sides(left: WaveFan, right: WaveFan):
    for wv in left.waves:
        if not wv.speed_hi < 0:
            raise AssertionError(f"left fan wave with non-negative speed: {wv}")
    for wv in right.waves:
        if not wv.speed > 0:
            raise AssertionError(f"right fan wave with non-positive speed: {wv}")


# ---------------------------------------------------------------------------
# grid solvers

def _discretize(fan: WaveFan, grid) -> WaveFan:
    out = []
    for wv in fan.waves:
        if wv.kind is WaveKind.RAR:
            out.extend(rs_fan(wv.left, wv.right, grid))
        else:
            out.append(Wave(grid.snap(wv.left), grid.snap(wv.right), wv.kind, wv.speed))
    return WaveFan(grid.snap(fan.left), grid.snap(fan.right), tuple(out), fan.params)


def rs_fan(u_l: State, u_r: State, grid):
    """Rarefaction shocks from u_l to u_r (same marker, v_l < v_r)."""
    P = grid.params
    vs = grid.v_values
    i0 = grid.v_index(u_l.v)
    i1 = grid.v_index(u_r.v)
    w = grid.w_values[grid.w_index(u_l.w)]
    out = []
    prev = State(vs[i0], w)
    for i in range(i0 + 1, i1 + 1):
        nxt = State(vs[i], w)
        out.append(Wave(prev, nxt, WaveKind.RS, P.lam(prev, nxt)))
        prev = nxt
    return out


def solve_grid(u_l: State, u_r: State, grid) -> WaveFan:
    grid.check_node(u_l)
    grid.check_node(u_r)
    return _discretize(solve(u_l, u_r, grid.params), grid)


def solve_grid_constrained(u_l: State, u_r: State, grid, data) -> WaveFan:
    grid.check_node(u_l)
    grid.check_node(u_r)
    return _discretize(solve_constrained(u_l, u_r, data), grid)


# ---------------------------------------------------------------------------
# evaluation

def eval_fan(fan: WaveFan, xi: float) -> State:
    """State at x/t = xi; at a jump the right state is returned."""
    for wv in fan.waves:
        if wv.kind is WaveKind.RAR:
            if xi < wv.speed:
                return wv.left
            if xi < wv.speed_r:
                P = fan.params
                lo, hi = P.rho(wv.right), P.rho(wv.left)
                return _rarefaction_state(P, wv.left.w, lo, hi, xi)
            continue
        if xi < wv.speed:
            return wv.left
    return fan.right


def traces(fan: WaveFan):
    """(u(0-), u(0+)) of the self-similar solution."""
    left = fan.left
    for wv in fan.waves:
        if wv.speed_hi < 0:
            left = wv.right
        elif wv.kind is WaveKind.RAR and wv.speed < 0:
            left = eval_fan(fan, 0.0)
            break
        else:
            break
    right = eval_fan(fan, 0.0)
    return left, right


def breakpoints(fan: WaveFan):
    pts = []
    for wv in fan.waves:
        pts.append(wv.speed)
        if wv.speed_r is not None:
            pts.append(wv.speed_r)
    return pts


_GL_X, _GL_W = np.polynomial.legendre.leggauss(6)


def l1_distance(fan_a: WaveFan, fan_b: WaveFan, a=-1.0, b=1.0) -> float:
    """L1 distance in (rho, v) of two self-similar solutions at t = 1 on [a, b]."""
    P = fan_a.params
    pts = sorted({a, b, *[x for x in breakpoints(fan_a) + breakpoints(fan_b) if a < x < b]})
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi - lo <= 0:
            continue
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        acc = 0.0
        for xg, wg in zip(_GL_X, _GL_W):
            x = mid + half * xg
            ua, ub = eval_fan(fan_a, x), eval_fan(fan_b, x)
            acc += wg * (abs(P.rho(ua) - P.rho(ub)) + abs(ua.v - ub.v))
        total += half * acc
    return total


def check_wave(wv: Wave, params: ModelParams, F=None, tol=1e-9):
    """Raise AssertionError if a wave breaks its kind's invariants."""
    P = params
    if is_null(wv.left, wv.right):
        raise AssertionError(f"null wave {wv}")
    k = wv.kind
    if k is WaveKind.CD and not wv.speed >= 0:
        raise AssertionError(f"CD with negative speed {wv}")
    if k in (WaveKind.S, WaveKind.RS) and not wv.speed < 0:
        raise AssertionError(f"{k.value} with non-negative speed {wv}")
    if k is WaveKind.PT:
        lo = -P.f_c_minus / (P.pressure.inv(P.w_minus) - P.rho_minus)
        if not lo - tol < wv.speed < P.V:
            raise AssertionError(f"PT speed out of range {wv}")
    if k is WaveKind.NS:
        if wv.speed != 0.0:
            raise AssertionError("NS must be stationary")
        if F is not None:
            for u in (wv.left, wv.right):
                if abs(P.flux(u) - F) > 1e-10:
                    raise AssertionError(f"NS trace flux {P.flux(u)} != F {F}")
        if P.capped_marker(wv.left) < P.capped_marker(wv.right):
            raise AssertionError("NS must not increase the capped marker")
    if k is not WaveKind.RAR:
        rl, rr = P.rho(wv.left), P.rho(wv.right)
        fl, fr = P.flux(wv.left), P.flux(wv.right)
        if abs(wv.speed * (rr - rl) - (fr - fl)) > tol:
            raise AssertionError(f"RH residual too large for {wv}")
