"""Flux constraint f(u(t, 0+-)) <= F at x = 0.

The thresholds v_F^+-, w_F, the bijection Xi_F(v) = v + p(F/v) and the
trace maps hat_u (left of the stationary shock) and check_u (right of it)
are collected in a ConstraintData built once per value of F.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

from scipy import optimize

from .model import DomainError, ModelParams, State

SNAP_F = 1e-12
FLUX_TOL = 1e-12
BISECT_ITERS = 50


class Regime(enum.Enum):
    ZERO = "zero"              # F = 0
    BELOW_META = "below_meta"  # 0 < F < f_c^-
    META = "meta"              # f_c^- <= F < f_c^+
    TOP = "top"                # F = f_c^+


def _bisect(g, lo, hi):
    """Root of a monotone function on [lo, hi] by plain bisection."""
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        # the root sits within rounding of an endpoint
        return lo if abs(g_lo) <= abs(g_hi) else hi
    return optimize.bisect(g, lo, hi, xtol=1e-15, rtol=8.9e-16,
                           maxiter=2 * BISECT_ITERS, disp=False)


@dataclass(frozen=True)
class ConstraintData:
    F: float
    params: ModelParams
    v_F_minus: float
    v_F_plus: float
    w_F: float
    regime: Regime

    @property
    def plus_side(self) -> bool:
        """True for F >= f_c^- (the '+' rows of the interaction table)."""
        return self.regime in (Regime.META, Regime.TOP)

    # -- Xi_F -----------------------------------------------------------------

    def xi(self, v):
        if self.F == 0.0:
            raise DomainError("Xi_F undefined for F = 0")
        if not (self.v_F_minus - 1e-12 <= v <= self.v_F_plus + 1e-12):
            raise DomainError(f"v={v} outside [v_F^-, v_F^+]")
        if v == self.v_F_minus:
            return self.params.w_plus
        if v == self.v_F_plus:
            return max(self.params.w_minus, self.w_F)
        return v + self.params.pressure.p(self.F / v)

    @functools.lru_cache(maxsize=1 << 16)
    def xi_inv(self, w):
        P = self.params
        w_lo = max(P.w_minus, self.w_F)
        if self.F == 0.0:
            if not (P.w_minus <= w <= P.w_plus):
                raise DomainError(f"w={w} outside [w^-, w^+]")
            return 0.0
        if not (w_lo - 1e-12 <= w <= P.w_plus + 1e-12):
            raise DomainError(f"w={w} outside [{w_lo}, w^+]")
        if w >= P.w_plus:
            return self.v_F_minus
        if w <= w_lo:
            return self.v_F_plus
        p = P.pressure
        F = self.F
        return _bisect(lambda v: v + p.p(F / v) - w, self.v_F_minus, self.v_F_plus)

    # -- trace maps -------------------------------------------------------------

    def hat_u(self, w) -> State:
        P = self.params
        if not (P.w_minus - 1.0 - 1e-12 <= w <= P.w_plus + 1e-12):
            raise DomainError(f"w={w} outside [w^- - 1, w^+]")
        if w > max(P.w_minus, self.w_F):
            return State(self.xi_inv(w), w)
        if w > self.w_F:
            return State(self.v_F_plus, P.w_minus)
        return State(P.V, self.w_F)

    def check_u(self, v) -> State:
        P = self.params
        if not (-1e-12 <= v <= P.V + 1e-12):
            raise DomainError(f"v={v} outside [0, V]")
        if v > self.v_F_plus:
            return State(P.V, self.w_F)
        if v >= self.v_F_minus:
            if self.F == 0.0:
                # v = 0: every marker carries zero flux; the w^+ end matches
                # the v < v_F^- branch
                return State(v, P.w_plus)
            return State(v, self.xi(v))
        return State(self.v_F_minus, P.w_plus)

    # -- D_1 membership ---------------------------------------------------------

    def in_D1(self, u_l: State, u_r: State) -> bool:
        """True when the unconstrained Riemann solution satisfies the constraint."""
        P = self.params
        # trace fluxes equal to F up to rounding belong to D_1
        F = self.F + FLUX_TOL * max(1.0, self.F)
        if P.in_free(u_l) and P.in_free(u_r):
            return P.flux(u_l) <= F
        if P.in_congested(u_l):
            return P.flux(P.u_star(u_l, u_r)) <= F
        # u_l free-low, u_r congested with v < V
        return min(P.flux(u_l), P.flux(P.v_pm(u_r, "minus"))) <= F


def build_constraint(F, params: ModelParams) -> ConstraintData:
    P = params
    F = float(F)
    if abs(F) <= SNAP_F:
        F = 0.0
    if abs(F - P.f_c_minus) <= SNAP_F:
        F = P.f_c_minus
    if abs(F - P.f_c_plus) <= SNAP_F:
        F = P.f_c_plus
    if not 0.0 <= F <= P.f_c_plus:
        raise DomainError(f"F={F} outside [0, f_c^+ = {P.f_c_plus}]")
    p = P.pressure
    V, wm, wp = P.V, P.w_minus, P.w_plus

    def solve_xi(target):
        # Xi_F is decreasing on (0, V]; at v = F/R the density equals R,
        # which puts Xi_F above w^+.
        lo = F / P.R
        return _bisect(lambda v: v + p.p(F / v) - target, lo, V)

    if F == 0.0:
        return ConstraintData(F, P, 0.0, 0.0, wm - 1.0, Regime.ZERO)
    if F == P.f_c_plus:
        return ConstraintData(F, P, V, V, wp, Regime.TOP)
    if F >= P.f_c_minus:
        w_F = wm if F == P.f_c_minus else p.p(F / V) + V
        return ConstraintData(F, P, solve_xi(wp), V, w_F, Regime.META)
    return ConstraintData(F, P, solve_xi(wp), solve_xi(wm),
                          wm - 1.0 + F / P.f_c_minus, Regime.BELOW_META)
