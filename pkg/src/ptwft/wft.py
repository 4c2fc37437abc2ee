"""Event-driven wave-front tracking on the grid G_n.

Fronts move with constant speed between events.  An event is either the
meeting of adjacent fronts or a front reaching x = 0; it is resolved with
the grid Riemann solver (away from 0) or the constrained grid solver (at 0).
Each interaction is checked against the interaction table and its effect on
the Temple functional

    T_n = TV(v) + TV(w) + 2 Upsilon_hat + 2 Upsilon_check
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import table
from .constraint import ConstraintData
from .grid import Grid, PiecewiseConstant
from .model import State
from .riemann import Wave, WaveKind, solve_grid, solve_grid_constrained

POS_TOL = 1e-10
MAX_EVENTS = 10 ** 6
MAX_FRONTS = 10 ** 5


class GuardBreach(RuntimeError):
    pass


class TableMismatch(RuntimeError):
    pass


@dataclass
class Front:
    id: int
    x0: float
    t0: float
    wave: Wave

    @property
    def speed(self) -> float:
        return self.wave.speed

    def pos(self, t: float) -> float:
        return self.x0 + self.wave.speed * (t - self.t0)


@dataclass
class Segment:
    id: int
    t0: float
    x0: float
    t1: float
    x1: float
    wave: Wave


@dataclass
class InteractionRecord:
    time: float
    location: float
    incoming: list
    outgoing: list
    table_row: str
    delta_sharp: int
    delta_T: float
    in_d1: bool | None = None
    status: str = table.OK
    reason: str = ""

    @property
    def ok(self) -> bool:
        """Outcome agrees with the table (printed or corrected row)."""
        return self.status != table.MISMATCH

    @property
    def verbatim(self) -> bool:
        """Outcome agrees with the printed row."""
        return self.status == table.OK


@dataclass
class TempleBreakdown:
    tv_v: float = 0.0
    tv_w: float = 0.0
    upsilon_hat: float = 0.0
    upsilon_check: float = 0.0

    @property
    def total(self) -> float:
        return self.tv_v + self.tv_w + 2.0 * self.upsilon_hat + 2.0 * self.upsilon_check

    def add(self, c, sign=1.0):
        self.tv_v += sign * c[0]
        self.tv_w += sign * c[1]
        self.upsilon_hat += sign * c[2]
        self.upsilon_check += sign * c[3]


# ---------------------------------------------------------------------------
# Temple functional


class _Traces:
    """Memoized scalar parts of hat_u / check_u."""

    def __init__(self, data: ConstraintData):
        self.data = data
        self._hat = {}
        self._check = {}

    def hat(self, w):
        r = self._hat.get(w)
        if r is None:
            r = self._hat[w] = self.data.hat_u(w)
        return r

    def check(self, v):
        r = self._check.get(v)
        if r is None:
            r = self._check[v] = self.data.check_u(v)
        return r


def front_contribution(wave: Wave, side: int, tr: _Traces):
    """(|dv|, |dw|, Upsilon_hat part, Upsilon_check part) of one front.

    side is -1 for x < 0, +1 for x > 0 and 0 at x = 0.
    """
    a, b = wave.left, wave.right
    d = tr.data
    uh = uc = 0.0
    if side < 0 and wave.kind is WaveKind.CD and a.w > max(b.w, d.w_F):
        ha, hb = tr.hat(a.w), tr.hat(b.w)
        uh = max(hb.v - ha.v, 0.0) + max(ha.w - hb.w, 0.0)
    elif side > 0 and wave.kind is WaveKind.RS and b.v > max(a.v, d.v_F_minus):
        ca, cb = tr.check(a.v), tr.check(b.v)
        uc = max(cb.v - ca.v, 0.0) + max(ca.w - cb.w, 0.0)
    return (abs(b.v - a.v), abs(b.w - a.w), uh, uc)


def temple_of(waves_sides, data: ConstraintData, tr=None) -> TempleBreakdown:
    tr = tr or _Traces(data)
    out = TempleBreakdown()
    for wv, side in waves_sides:
        out.add(front_contribution(wv, side, tr))
    return out


def temple_bruteforce(states, edges, data: ConstraintData) -> TempleBreakdown:
    """Temple functional of a piecewise constant profile, straight from the
    total-variation definition (positive/negative variations of the composed
    trace maps over the half lines)."""
    out = TempleBreakdown()
    for x, a, b in zip(edges, states[:-1], states[1:]):
        out.tv_v += abs(b.v - a.v)
        out.tv_w += abs(b.w - a.w)
        if x < 0:
            ha, hb = data.hat_u(a.w), data.hat_u(b.w)
            out.upsilon_hat += max(hb.v - ha.v, 0.0) + max(ha.w - hb.w, 0.0)
        elif x > 0:
            ca, cb = data.check_u(a.v), data.check_u(b.v)
            out.upsilon_check += max(cb.v - ca.v, 0.0) + max(ca.w - cb.w, 0.0)
    return out


# ---------------------------------------------------------------------------
# simulation state


def _side(x, speed, sense):
    if x < -POS_TOL:
        return -1
    if x > POS_TOL:
        return 1
    if speed == 0.0:
        return 0
    s = 1 if speed > 0 else -1
    return s if sense > 0 else -s


@dataclass
class SimState:
    grid: Grid
    data: ConstraintData
    datum: PiecewiseConstant
    time: float = 0.0
    fronts: list = field(default_factory=list)
    segments: list = field(default_factory=list)
    records: list = field(default_factory=list)
    series: list = field(default_factory=list)     # (t, sharp, T, U_hat, U_check)
    temple: TempleBreakdown = field(default_factory=TempleBreakdown)
    next_id: int = 0
    strict: bool = True
    max_events: int = MAX_EVENTS
    max_fronts: int = MAX_FRONTS

    def __post_init__(self):
        self._tr = _Traces(self.data)

    @property
    def params(self):
        return self.data.params

    @property
    def sharp(self) -> int:
        return len(self.fronts)

    def states(self):
        if not self.fronts:
            return [self.datum.values[0]]
        return [self.fronts[0].wave.left] + [f.wave.right for f in self.fronts]

    def _new_front(self, wave, x0, t0):
        f = Front(self.next_id, x0, t0, wave)
        self.next_id += 1
        return f

    def _close(self, front, t1):
        self.segments.append(Segment(front.id, front.t0, front.x0, t1, front.pos(t1), front.wave))

    def temple_now(self, sense=1) -> TempleBreakdown:
        """Recompute T_n from scratch at the current time."""
        t = self.time
        return temple_of(((f.wave, _side(f.pos(t), f.speed, sense)) for f in self.fronts),
                         self.data, self._tr)

    def _record_series(self):
        T = self.temple
        self.series.append((self.time, self.sharp, T.total, T.upsilon_hat, T.upsilon_check))


def init(datum: PiecewiseConstant, grid: Grid, data: ConstraintData, **kw) -> SimState:
    """Solve every initial jump; at x = 0 the constrained solver is used."""
    st = SimState(grid, data, datum, **kw)
    for u in datum.values:
        grid.check_node(u)
    jumps = list(zip(datum.edges, datum.values[:-1], datum.values[1:]))
    if 0.0 not in datum.edges:
        u0 = datum(0.0)
        if not data.in_D1(u0, u0):
            jumps.append((0.0, u0, u0))
            jumps.sort(key=lambda j: j[0])
    for x, a, b in jumps:
        if x == 0.0:
            fan = solve_grid_constrained(a, b, grid, data)
        else:
            fan = solve_grid(a, b, grid)
        for wv in fan.waves:
            st.fronts.append(st._new_front(wv, x, 0.0))
    st.temple = st.temple_now(sense=1)
    st._record_series()
    return st


# ---------------------------------------------------------------------------
# events


@dataclass
class Event:
    time: float
    location: float
    first: int
    last: int

    @property
    def at_zero(self) -> bool:
        return self.location == 0.0


def next_event(st: SimState):
    """Earliest collision or crossing of x = 0, or None."""
    fr = st.fronts
    if not fr:
        return None
    t = st.time
    x = np.array([f.pos(t) for f in fr])
    s = np.array([f.speed for f in fr])
    best = math.inf
    loc = None
    if len(fr) > 1:
        ds = s[:-1] - s[1:]
        idx = np.nonzero(ds > 0)[0]
        if idx.size:
            dt = np.maximum((x[idx + 1] - x[idx]) / ds[idx], 0.0)
            k = int(np.argmin(dt))
            best = float(dt[k])
            i = int(idx[k])
            loc = 0.5 * (x[i] + s[i] * best + x[i + 1] + s[i + 1] * best)
    left = np.nonzero((x < -POS_TOL) & (s > 0))[0]
    right = np.nonzero((x > POS_TOL) & (s < 0))[0]
    cross = np.concatenate([-x[left] / s[left], x[right] / -s[right]])
    if cross.size:
        dtc = float(cross.min())
        if dtc <= best + 1e-12:
            best, loc = min(dtc, best), 0.0
    if loc is None:
        return None
    T = t + best
    if abs(loc) <= POS_TOL:
        loc = 0.0
    xT = x + s * best
    near = np.nonzero(np.abs(xT - loc) <= POS_TOL * max(1.0, abs(loc)))[0]
    return Event(T, loc, int(near.min()), int(near.max()))


def step(st: SimState, ev: Event) -> InteractionRecord:
    t, loc = ev.time, ev.location
    group = st.fronts[ev.first:ev.last + 1]
    u_l, u_r = group[0].wave.left, group[-1].wave.right
    d1 = None
    if ev.at_zero:
        d1 = st.data.in_D1(u_l, u_r)
        fan = solve_grid_constrained(u_l, u_r, st.grid, st.data)
    else:
        fan = solve_grid(u_l, u_r, st.grid)

    for f in group:
        st._close(f, t)
    incoming = [f.wave for f in group]
    same = list(fan.waves) == incoming
    if same:
        out = [Front(f.id, loc, t, f.wave) for f in group]
    else:
        out = [st._new_front(wv, loc, t) for wv in fan.waves]

    before = temple_of(((f.wave, _side(f.pos(t), f.speed, -1)) for f in group), st.data, st._tr)
    after = temple_of(((f.wave, _side(loc, f.speed, 1)) for f in out), st.data, st._tr)
    st.temple.add((before.tv_v, before.tv_w, before.upsilon_hat, before.upsilon_check), -1.0)
    st.temple.add((after.tv_v, after.tv_w, after.upsilon_hat, after.upsilon_check), 1.0)
    dT = after.total - before.total

    st.fronts[ev.first:ev.last + 1] = out
    st.time = t
    kinds = [w.kind.value for w in incoming]
    row = table.label(kinds, ev.at_zero, d1, st.data.plus_side)
    d_sharp = len(out) - len(group)
    status, reason = table.check(row, d_sharp, dT, st.grid.n, st.grid.eps_n)
    rec = InteractionRecord(t, loc, incoming, list(fan.waves), row, d_sharp, dT, d1,
                            status, reason)
    st.records.append(rec)
    st._record_series()
    if len(st.fronts) > st.max_fronts:
        raise GuardBreach(f"more than {st.max_fronts} fronts")
    if not rec.ok and st.strict:
        raise TableMismatch(f"t={t:.6g} x={loc:.6g}: {reason}")
    return rec


# ---------------------------------------------------------------------------
# trajectory


@dataclass
class Trajectory:
    grid: Grid
    data: ConstraintData
    datum: PiecewiseConstant
    t_end: float
    segments: list
    records: list
    series: list
    temple0: TempleBreakdown

    @property
    def params(self):
        return self.data.params

    @property
    def mismatches(self):
        return [r for r in self.records if not r.ok]

    def active(self, t):
        """Segments alive at t, left-continuous in time."""
        return [s for s in self.segments if s.t0 < t <= s.t1]

    def profile(self, t):
        """(edges, states) of u_n(t, .) with u_n(t) = u_n(t-)."""
        if not 0.0 <= t <= self.t_end:
            raise ValueError(f"t={t} outside [0, {self.t_end}]")
        if t == 0.0:
            return list(self.datum.edges), list(self.datum.values)
        segs = []
        for s in self.active(t):
            x = s.x1 if t == s.t1 else s.x0 + s.wave.speed * (t - s.t0)
            segs.append((x, -s.wave.speed, s))
        segs.sort(key=lambda q: (q[0], q[1]))
        edges = [q[0] for q in segs]
        states = [self.datum.values[0]] + [q[2].wave.right for q in segs]
        for (x, _, s), prev in zip(segs, states[:-1]):
            if s.wave.left != prev:
                raise AssertionError(f"broken front chain at t={t}, x={x}")
        return edges, states

    def sample(self, t, xs):
        edges, states = self.profile(t)
        idx = np.searchsorted(np.asarray(edges), np.asarray(xs, dtype=float), side="right")
        return [states[i] for i in idx]

    def traces(self, t):
        """(u_n(t, 0-), u_n(t, 0+)); fronts sitting at 0 separate the two."""
        edges, states = self.profile(t)
        e = np.asarray(edges)
        i = int(np.searchsorted(e, -POS_TOL, side="left"))
        j = int(np.searchsorted(e, POS_TOL, side="right"))
        return states[i], states[j]

    def interaction_times(self, row=None):
        return [r.time for r in self.records if row is None or r.table_row == row]


def run(st: SimState, t_end: float) -> Trajectory:
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    temple0 = TempleBreakdown(st.temple.tv_v, st.temple.tv_w,
                              st.temple.upsilon_hat, st.temple.upsilon_check)
    count = 0
    while True:
        ev = next_event(st)
        if ev is None or ev.time > t_end:
            break
        step(st, ev)
        count += 1
        if count > st.max_events:
            raise GuardBreach(f"more than {st.max_events} events")
    last = t_end
    if not math.isfinite(t_end):
        last = max([st.time] + [s.t1 for s in st.segments]) + 1.0
    for f in st.fronts:
        st._close(f, last)
    st.fronts = []
    return Trajectory(st.grid, st.data, st.datum, last, st.segments, st.records,
                      st.series, temple0)


def simulate(datum, grid, data, t_end, **kw) -> Trajectory:
    return run(init(datum, grid, data, **kw), t_end)


# ---------------------------------------------------------------------------
# functionals of a profile


def tv_profile(states, params):
    """(TV(v), TV(w), TV(rho) + TV(v))."""
    v = np.array([u.v for u in states])
    w = np.array([u.w for u in states])
    r = np.array([params.rho(u) for u in states])
    dv = np.abs(np.diff(v)).sum()
    dw = np.abs(np.diff(w)).sum()
    return float(dv), float(dw), float(np.abs(np.diff(r)).sum() + dv)


def l1_profiles(pa, pb, params, a, b):
    """L1 distance in (rho, v) of two piecewise constant profiles on [a, b]."""
    ea, sa = pa
    eb, sb = pb
    pts = sorted({a, b, *[x for x in list(ea) + list(eb) if a < x < b]})
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi <= lo:
            continue
        m = 0.5 * (lo + hi)
        ua = sa[int(np.searchsorted(ea, m, side="right"))]
        ub = sb[int(np.searchsorted(eb, m, side="right"))]
        total += (hi - lo) * (abs(params.rho(ua) - params.rho(ub)) + abs(ua.v - ub.v))
    return total


def mass(profile, params, a, b):
    edges, states = profile
    pts = [a] + [x for x in edges if a < x < b] + [b]
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        u = states[int(np.searchsorted(edges, 0.5 * (lo + hi), side="right"))]
        total += (hi - lo) * params.rho(u)
    return total
