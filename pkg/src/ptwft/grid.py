"""The grid G_n of admissible (v, w) nodes and projection of initial data."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constraint import ConstraintData, Regime
from .model import DomainError, ModelParams, State

SNAP_TOL = 1e-9


class OffGridError(DomainError):
    pass


def _band(a, b, m):
    x = np.linspace(a, b, m + 1)
    x[0], x[-1] = a, b
    return x


def _ladders(n: int, data: ConstraintData):
    P = data.params
    m = 2 ** n
    wm, wp, V, wF = P.w_minus, P.w_plus, P.V, data.w_F
    vFm, vFp = data.v_F_minus, data.v_F_plus
    if data.regime is Regime.ZERO:
        v = _band(0.0, V, m)
        w = np.concatenate([_band(wm - 1.0, wm, m), _band(wm, wp, m)])
    elif data.regime is Regime.BELOW_META:
        w3 = _band(wm, wp, m)
        w = np.concatenate([_band(wm - 1.0, wF, m), _band(wF, wm, m), w3])
        mid = np.array([data.xi_inv(x) for x in w3[::-1]])
        v = np.concatenate([_band(0.0, vFm, m), mid, _band(vFp, V, m)])
    else:   # META and TOP
        w3 = _band(wF, wp, m)
        w = np.concatenate([_band(wm - 1.0, wm, m), _band(wm, wF, m), w3])
        if data.regime is Regime.TOP:
            mid = np.full(m + 1, V)
        else:
            mid = np.array([data.xi_inv(x) for x in w3[::-1]])
        v = np.concatenate([_band(0.0, vFm, m), mid])
    return np.unique(v), np.unique(w)


@dataclass
class Grid:
    n: int
    data: ConstraintData
    v_values: np.ndarray = field(repr=False)
    w_values: np.ndarray = field(repr=False)
    eps_n: float = 0.0
    cal_E_n: float = 0.0

    @property
    def params(self) -> ModelParams:
        return self.data.params

    def __post_init__(self):
        dv = np.diff(self.v_values)
        dw = np.diff(self.w_values)
        self.eps_n = float(min(dv.min(), dw.min()))
        self.cal_E_n = float(dv.max())
        self._tol = min(SNAP_TOL, 0.25 * self.eps_n)
        self._v_pos = {float(x): i for i, x in enumerate(self.v_values)}
        self._w_pos = {float(x): i for i, x in enumerate(self.w_values)}

    # -- lookups ------------------------------------------------------------

    def _index(self, ladder, table, x):
        i = table.get(x)
        if i is not None:
            return i
        j = int(np.searchsorted(ladder, x))
        best = None
        for k in (j - 1, j):
            if 0 <= k < len(ladder) and abs(ladder[k] - x) <= self._tol:
                best = k
        if best is None:
            raise OffGridError(f"value {x!r} is not a grid node")
        return best

    def v_index(self, v) -> int:
        return self._index(self.v_values, self._v_pos, v)

    def w_index(self, w) -> int:
        return self._index(self.w_values, self._w_pos, w)

    def snap(self, u: State) -> State:
        s = State(float(self.v_values[self.v_index(u.v)]),
                  float(self.w_values[self.w_index(u.w)]))
        if s.w < self.params.w_minus and s.v != self.params.V:
            raise OffGridError(f"{u} is not in the admissible set")
        return s

    def check_node(self, u: State):
        if self.snap(u) != u:
            raise OffGridError(f"{u} is not exactly a grid node")

    def is_node(self, u: State) -> bool:
        try:
            self.check_node(u)
        except OffGridError:
            return False
        return True

    def states(self):
        P = self.params
        out = []
        for w in self.w_values:
            if w < P.w_minus:
                out.append(State(P.V, float(w)))
            else:
                out.extend(State(float(v), float(w)) for v in self.v_values)
        return out

    # -- projection -----------------------------------------------------------

    def _floor(self, ladder, x):
        j = int(np.searchsorted(ladder, x + self._tol, side="right")) - 1
        return float(ladder[max(j, 0)])

    def project_state(self, u: State) -> State:
        P = self.params
        w = self._floor(self.w_values, u.w)
        if u.w < P.w_minus:
            return State(P.V, min(w, float(self.w_values[self.w_index(P.w_minus) - 1])))
        return State(self._floor(self.v_values, u.v), w)


def build_grid(n: int, data: ConstraintData) -> Grid:
    if n < 2:
        raise DomainError("refinement level n must be at least 2")
    v, w = _ladders(n, data)
    return Grid(n, data, v, w)


# ---------------------------------------------------------------------------
# piecewise constant data

@dataclass
class PiecewiseConstant:
    """values[0] on (-inf, edges[0]), values[i] on [edges[i-1], edges[i]), ..."""
    edges: list
    values: list

    def __post_init__(self):
        if len(self.values) != len(self.edges) + 1:
            raise DomainError("need one more value than edges")
        if any(not math.isfinite(x) for x in self.edges):
            raise DomainError("edges must be finite")
        if any(b <= a for a, b in zip(self.edges[:-1], self.edges[1:])):
            raise DomainError("edges must be strictly increasing")

    @classmethod
    def from_pieces(cls, pieces):
        """pieces: [(x_left, State), ...] with the first x_left = -inf."""
        pieces = list(pieces)
        if not pieces or pieces[0][0] != -math.inf:
            raise DomainError("first piece must start at -inf")
        return cls([x for x, _ in pieces[1:]], [u for _, u in pieces])

    def merged(self):
        edges, values = [], [self.values[0]]
        for x, u in zip(self.edges, self.values[1:]):
            if u != values[-1]:
                edges.append(x)
                values.append(u)
        return PiecewiseConstant(edges, values)

    def __call__(self, x):
        i = int(np.searchsorted(self.edges, x, side="right"))
        return self.values[i]

    def tv(self, fn):
        vals = [fn(u) for u in self.values]
        return float(sum(abs(b - a) for a, b in zip(vals[:-1], vals[1:])))


def project_datum(datum: PiecewiseConstant, grid: Grid) -> PiecewiseConstant:
    return PiecewiseConstant(list(datum.edges),
                             [grid.project_state(u) for u in datum.values]).merged()
