"""Measured a-priori estimates: total variation and L1-Lipschitz in time."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .entropy import trace_times
from .model import ModelParams
from .wft import l1_profiles, tv_profile

TOL = 1e-9


def density_lipschitz(params: ModelParams, samples=4001) -> float:
    """L = max{rho^-, sup 1/p'} with the sup taken over [rho^-, R].

    In the congested phase |d rho| <= |dw - dv| / p', in the free phase
    |d rho| = rho^- |dw|.
    """
    r = np.linspace(params.rho_minus, params.R, samples)
    dp = np.array([params.pressure.dp(x) for x in r])
    return float(max(params.rho_minus, (1.0 / dp).max()))


@dataclass
class BoundsReport:
    L: float
    T0: float
    C_F: float
    L_F: float
    max_tv_vw: float = 0.0        # max_t TV(v) + TV(w)
    max_tv_u: float = 0.0         # max_t TV(rho) + TV(v)
    max_ratio: float = 0.0        # max ||u(t) - u(s)||_1 / |t - s|
    pairs: list = field(default_factory=list)

    @property
    def tv_ok(self) -> bool:
        return self.max_tv_vw <= self.T0 + TOL

    @property
    def tvu_ok(self) -> bool:
        return self.max_tv_u <= self.C_F + TOL

    @property
    def lip_ok(self) -> bool:
        return self.max_ratio <= self.L_F + TOL

    @property
    def ok(self) -> bool:
        return self.tv_ok and self.tvu_ok and self.lip_ok


def _extent(trajectory):
    xs = [0.0] + [s.x0 for s in trajectory.segments] + [s.x1 for s in trajectory.segments]
    return min(xs) - 1.0, max(xs) + 1.0


def check_bounds(trajectory, n_pairs=50, seed=0) -> BoundsReport:
    P = trajectory.params
    L = density_lipschitz(P)
    T0 = trajectory.temple0.total
    C_F = (1.0 + L) * T0
    L_F = C_F * P.speed_bound()
    rep = BoundsReport(L, T0, C_F, L_F)
    times = [0.0] + trace_times(trajectory) + [trajectory.t_end]
    for t in times:
        _, states = trajectory.profile(t)
        dv, dw, du = tv_profile(states, P)
        rep.max_tv_vw = max(rep.max_tv_vw, dv + dw)
        rep.max_tv_u = max(rep.max_tv_u, du)
    rng = np.random.default_rng(seed)
    a, b = _extent(trajectory)
    for _ in range(n_pairs):
        t, s = np.sort(rng.uniform(0.0, trajectory.t_end, 2))
        if s <= t:
            continue
        d = l1_profiles(trajectory.profile(float(t)), trajectory.profile(float(s)), P, a, b)
        q = d / (s - t)
        rep.pairs.append((float(t), float(s), d))
        rep.max_ratio = max(rep.max_ratio, q)
    return rep
