"""Model geometry for the coupled LWR / ARZ phase-transition traffic model.

States are stored as ``(v, w)`` pairs: speed and extended Lagrangian marker.
Density is derived on demand,

    rho = p^{-1}(w - v)                 if w >= w^-   (congested side)
    rho = (w + 1 - w^-) * rho^-          if w <  w^-   (free phase, v = V)

so the vacuum is the single point ``(V, w^- - 1)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from scipy import optimize

DOMAIN_TOL = 1e-10


class DomainError(ValueError):
    """State or argument outside the admissible set."""


class Phase(enum.Enum):
    FREE_LOW = "free"          # Omega_f^-
    METASTABLE = "metastable"  # Omega_f^+ = Omega_f cap Omega_c
    CONGESTED = "congested"    # Omega_c^-


class State(NamedTuple):
    v: float
    w: float

    def __repr__(self):
        return f"State(v={self.v:.10g}, w={self.w:.10g})"


# ---------------------------------------------------------------------------
# pressure laws

class PressureLaw:
    """Increasing anticipation factor rho -> p(rho)."""

    tol = 1e-12

    def p(self, rho):
        raise NotImplementedError

    def dp(self, rho):
        raise NotImplementedError

    def d2p(self, rho):
        raise NotImplementedError

    def inv(self, x, hi=None):
        """Guarded bisection fallback on [0, hi]."""
        lo = 0.0
        hi = 1.0 if hi is None else hi
        while self.p(hi) < x:
            hi *= 2.0
            if hi > 1e12:
                raise DomainError(f"pressure inverse of {x} out of range")
        if self.p(max(lo, 1e-300)) > x:
            raise DomainError(f"pressure inverse of {x} below range")
        return optimize.bisect(lambda r: self.p(r) - x, max(lo, 1e-300), hi,
                               xtol=self.tol, maxiter=200)


@dataclass(frozen=True)
class PowerLaw(PressureLaw):
    gamma: float = 2.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("gamma must be positive")

    def p(self, rho):
        return rho ** self.gamma

    def dp(self, rho):
        return self.gamma * rho ** (self.gamma - 1.0)

    def d2p(self, rho):
        g = self.gamma
        return g * (g - 1.0) * rho ** (g - 2.0)

    def inv(self, x, hi=None):
        if x < 0:
            if x > -DOMAIN_TOL:
                return 0.0
            raise DomainError(f"power-law pressure inverse of negative value {x}")
        if self.gamma == 2.0:
            return math.sqrt(x)
        return x ** (1.0 / self.gamma)


@dataclass(frozen=True)
class Logarithmic(PressureLaw):
    """p(rho) = V_ref * log(rho / rho_max)."""
    v_ref: float = 1.0
    rho_max: float = 1.0

    def __post_init__(self):
        if not (self.v_ref > 0 and self.rho_max > 0):
            raise DomainError("V_ref and rho_max must be positive")

    def p(self, rho):
        return self.v_ref * math.log(rho / self.rho_max)

    def dp(self, rho):
        return self.v_ref / rho

    def d2p(self, rho):
        return -self.v_ref / rho ** 2

    def inv(self, x, hi=None):
        return self.rho_max * math.exp(x / self.v_ref)


# ---------------------------------------------------------------------------
# model parameters and state maps

@dataclass(frozen=True)
class ModelParams:
    V: float
    w_minus: float
    w_plus: float
    pressure: PressureLaw = field(default_factory=PowerLaw)

    def __post_init__(self):
        V, wm, wp, p = self.V, self.w_minus, self.w_plus, self.pressure
        if not V > 0:
            raise DomainError("V must be positive")
        if not 0 < wm < wp:
            raise DomainError("need 0 < w_minus < w_plus")
        if isinstance(p, PowerLaw):
            if not (p.gamma + 1.0) * V < p.gamma * wm:
                raise DomainError("power law needs (gamma+1) V < gamma w_minus")
        elif isinstance(p, Logarithmic):
            if not V < p.v_ref:
                raise DomainError("logarithmic law needs V < V_ref")
        rho_minus = p.inv(wm - V)
        rho_plus = p.inv(wp - V)
        R = p.inv(wp)
        object.__setattr__(self, "rho_minus", rho_minus)
        object.__setattr__(self, "rho_plus", rho_plus)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "f_c_minus", V * rho_minus)
        object.__setattr__(self, "f_c_plus", V * rho_plus)
        if not rho_minus < rho_plus < R:
            raise DomainError("need rho^- < rho^+ < R")

    # -- representation -----------------------------------------------------

    @property
    def vacuum(self) -> State:
        return State(self.V, self.w_minus - 1.0)

    def make_state(self, v, w) -> State:
        """Validated state, snapping values within DOMAIN_TOL to the boundaries."""
        V, wm, wp = self.V, self.w_minus, self.w_plus
        v, w = float(v), float(w)
        for b in (0.0, V):
            if abs(v - b) <= DOMAIN_TOL:
                v = b
        for b in (wm - 1.0, wm, wp):
            if abs(w - b) <= DOMAIN_TOL:
                w = b
        if not (wm - 1.0 <= w <= wp):
            raise DomainError(f"marker {w} outside [w^- - 1, w^+]")
        if w < wm and v != V:
            raise DomainError(f"free state must have v = V, got v={v}")
        if not 0.0 <= v <= V:
            raise DomainError(f"speed {v} outside [0, V]")
        return State(v, w)

    def from_rho_v(self, rho, v) -> State:
        """State from (rho, v); free states need v = V."""
        v = float(v)
        if abs(v - self.V) <= DOMAIN_TOL and rho <= self.rho_minus + DOMAIN_TOL:
            w = self.w_minus - 1.0 + rho / self.rho_minus
            return self.make_state(self.V, min(w, self.w_minus))
        return self.make_state(v, v + self.pressure.p(rho))

    def rho(self, u: State) -> float:
        if u.w >= self.w_minus:
            return self.pressure.inv(u.w - u.v)
        return (u.w + 1.0 - self.w_minus) * self.rho_minus

    def flux(self, u: State) -> float:
        return self.rho(u) * u.v

    def marker(self, u: State) -> float:
        return u.w

    def capped_marker(self, u: State) -> float:
        return max(self.w_minus, u.w)

    def marker_from_rho_v(self, rho, v) -> float:
        """Marker computed from (rho, v) by the branch formulas."""
        if v == self.V and rho < self.rho_minus:
            return self.w_minus - 1.0 + rho / self.rho_minus
        return v + self.pressure.p(rho)

    def phase(self, u: State) -> Phase:
        if u.w < self.w_minus:
            return Phase.FREE_LOW
        if u.v == self.V:
            return Phase.METASTABLE
        return Phase.CONGESTED

    def in_free(self, u: State) -> bool:
        """u in Omega_f."""
        return u.v == self.V

    def in_congested(self, u: State) -> bool:
        """u in Omega_c."""
        return u.w >= self.w_minus

    def is_vacuum(self, u: State) -> bool:
        return u.w == self.w_minus - 1.0

    # -- Lax curves and state maps -----------------------------------------

    def lax1(self, w, rho):
        """First-family Lax curve (w - p(rho)) rho."""
        p = self.pressure
        lo, hi = p.inv(w - self.V), p.inv(w)
        if not (lo - DOMAIN_TOL <= rho <= hi + DOMAIN_TOL):
            raise DomainError(f"rho={rho} outside [{lo}, {hi}] for w={w}")
        return (w - p.p(rho)) * rho

    def char_speed(self, u: State) -> float:
        """First characteristic speed v - rho p'(rho) on Omega_c."""
        r = self.rho(u)
        return u.v - r * self.pressure.dp(r)

    def omega(self, u: State) -> State:
        if not self.in_congested(u):
            raise DomainError("omega needs a congested state")
        return State(self.V, u.w)

    def v_pm(self, u: State, side: str) -> State:
        if side == "plus":
            return State(u.v, self.w_plus)
        if side == "minus":
            return State(u.v, self.w_minus)
        raise ValueError("side must be 'plus' or 'minus'")

    def u_star(self, u_l: State, u_r: State) -> State:
        return State(u_r.v, self.capped_marker(u_l))

    def lam(self, u_l: State, u_r: State) -> float:
        """Rankine-Hugoniot speed (f_r - f_l) / (rho_r - rho_l)."""
        rl, rr = self.rho(u_l), self.rho(u_r)
        if rl == rr:
            if u_l.v == u_r.v:
                return u_l.v
            raise DomainError("degenerate slope: equal densities")
        return (rr * u_r.v - rl * u_l.v) / (rr - rl)

    def speed_bound(self) -> float:
        """max{V, R p'(R)}, a bound on all wave speeds."""
        R = self.R
        return max(self.V, R * self.pressure.dp(R))
