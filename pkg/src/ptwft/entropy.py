"""Entropy pairs, Rankine-Hugoniot residuals and constraint diagnostics
evaluated front by front on a tracked trajectory."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constraint import ConstraintData
from .model import ModelParams, State
from .riemann import WaveKind

TOL = 1e-10


def entropy_E(u: State, k: float, params: ModelParams) -> float:
    if u.v >= k:
        return 0.0
    return params.rho(u) / params.pressure.inv(params.capped_marker(u) - k) - 1.0


def entropy_Q(u: State, k: float, params: ModelParams) -> float:
    if u.v >= k:
        return 0.0
    return params.flux(u) / params.pressure.inv(params.capped_marker(u) - k) - k


def n_flux(u: State, k: float, data: ConstraintData) -> float:
    """Boundary entropy flux N^k_F used at the stationary shock."""
    P = data.params
    if data.F == 0.0:
        return k
    f = P.flux(u)
    if f == 0.0:
        return 0.0
    return f * max(k / data.F - 1.0 / P.pressure.inv(P.capped_marker(u) - k), 0.0)


def k_ladder(grid) -> np.ndarray:
    """Grid speeds plus the midpoints between consecutive ones."""
    v = np.asarray(grid.v_values)
    mids = 0.5 * (v[:-1] + v[1:])
    return np.sort(np.concatenate([v, mids]))


def rs_bound_constant(params: ModelParams, samples=2001) -> float:
    """m = (2 / rho^-) max |rho p'(rho)| over [rho^-, R]."""
    r = np.linspace(params.rho_minus, params.R, samples)
    p = params.pressure
    vals = np.abs(np.array([x * p.dp(x) for x in r]))
    return 2.0 / params.rho_minus * float(vals.max())


def _unique_waves(trajectory):
    seen = {}
    for s in trajectory.segments:
        seen.setdefault(s.wave, None)
    return list(seen)


# ---------------------------------------------------------------------------


@dataclass
class RHReport:
    max_rh1: float = 0.0
    max_rh2: float = 0.0          # over non-NS fronts
    ns_rh2: list = field(default_factory=list)  # marker-jump residuals at NS fronts
    count: int = 0

    @property
    def ok(self) -> bool:
        return self.max_rh1 <= 1e-9 and self.max_rh2 <= 1e-9


def rh_residuals(wave, params: ModelParams):
    a, b = wave.left, wave.right
    ra, rb = params.rho(a), params.rho(b)
    fa, fb = params.flux(a), params.flux(b)
    Wa, Wb = params.capped_marker(a), params.capped_marker(b)
    s = wave.speed
    rh1 = abs(s * (rb - ra) - (fb - fa))
    rh2 = abs(s * (rb * Wb - ra * Wa) - (fb * Wb - fa * Wa))
    return rh1, rh2


def rh_check(trajectory) -> RHReport:
    P = trajectory.params
    rep = RHReport()
    for wv in _unique_waves(trajectory):
        rh1, rh2 = rh_residuals(wv, P)
        rep.count += 1
        rep.max_rh1 = max(rep.max_rh1, rh1)
        if wv.kind is WaveKind.NS:
            rep.ns_rh2.append(rh2)
        else:
            rep.max_rh2 = max(rep.max_rh2, rh2)
    return rep


# ---------------------------------------------------------------------------


@dataclass
class DissipationReport:
    records: list = field(default_factory=list)     # (kind, k, value, bound)
    ns_records: list = field(default_factory=list)  # (k, -dQ, -dQ + N)
    violations: list = field(default_factory=list)
    m: float = 0.0
    rs_total: float = 0.0        # sum over fronts of the negative RS parts, weighted by lifetime

    @property
    def ok(self) -> bool:
        return not self.violations

    def min_by_kind(self):
        out = {}
        for kind, _, val, _ in self.records:
            out[kind] = min(out.get(kind, np.inf), val)
        return out


def wave_dissipation(wave, k, params: ModelParams) -> float:
    """speed * dE - dQ across one front."""
    a, b = wave.left, wave.right
    dE = entropy_E(b, k, params) - entropy_E(a, k, params)
    dQ = entropy_Q(b, k, params) - entropy_Q(a, k, params)
    return wave.speed * dE - dQ


def dissipation(trajectory, k_set=None) -> DissipationReport:
    P = trajectory.params
    data = trajectory.data
    ks = k_ladder(trajectory.grid) if k_set is None else np.asarray(k_set)
    rep = DissipationReport(m=rs_bound_constant(P))
    life = {}
    for s in trajectory.segments:
        life[s.wave] = life.get(s.wave, 0.0) + (s.t1 - s.t0)
    for wv, dt in life.items():
        kind = wv.kind.value
        for k in ks:
            k = float(k)
            if wv.kind is WaveKind.NS:
                a, b = wv.left, wv.right
                mdq = -(entropy_Q(b, k, P) - entropy_Q(a, k, P))
                tot = mdq + n_flux(a, k, data)
                rep.ns_records.append((k, mdq, tot))
                if mdq > TOL or tot < -TOL:
                    rep.violations.append((kind, k, mdq, tot, wv))
                continue
            val = wave_dissipation(wv, k, P)
            bound = 0.0
            if wv.kind is WaveKind.CD:
                bad = abs(val) > TOL
            elif wv.kind is WaveKind.RS:
                bound = -rep.m * (P.rho(wv.left) - P.rho(wv.right))
                bad = val < bound - TOL
                rep.rs_total += min(val, 0.0) * dt
            else:
                bad = val < -TOL
            rep.records.append((kind, k, val, bound))
            if bad:
                rep.violations.append((kind, k, val, bound, wv))
    return rep


# ---------------------------------------------------------------------------


@dataclass
class ConstraintReport:
    max_excess: float = -np.inf       # max over time of f(u(t, 0+-)) - F
    max_ns_defect: float = 0.0        # max |f - F| at the traces while a NS exists
    ns_intervals: list = field(default_factory=list)
    samples: int = 0

    @property
    def ok(self) -> bool:
        return self.max_excess <= 1e-10 and self.max_ns_defect <= 1e-10


def trace_times(trajectory):
    """One time inside every interval between consecutive events."""
    ts = sorted({0.0, *trajectory.interaction_times(), trajectory.t_end})
    return [0.5 * (a + b) for a, b in zip(ts[:-1], ts[1:]) if b > a]


def ns_flux_property(trajectory, data: ConstraintData = None) -> ConstraintReport:
    data = data or trajectory.data
    P = data.params
    rep = ConstraintReport()
    for t in trace_times(trajectory):
        left, right = trajectory.traces(t)
        fl, fr = P.flux(left), P.flux(right)
        rep.samples += 1
        rep.max_excess = max(rep.max_excess, fl - data.F, fr - data.F)
        if any(s.wave.kind is WaveKind.NS for s in trajectory.active(t)):
            rep.max_ns_defect = max(rep.max_ns_defect, abs(fl - data.F), abs(fr - data.F))
    spans = [(s.t0, s.t1) for s in trajectory.segments if s.wave.kind is WaveKind.NS]
    spans.sort()
    for a, b in spans:
        if rep.ns_intervals and abs(rep.ns_intervals[-1][1] - a) <= 1e-12:
            rep.ns_intervals[-1] = (rep.ns_intervals[-1][0], b)
        else:
            rep.ns_intervals.append((a, b))
    return rep
