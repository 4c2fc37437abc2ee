"""Randomized scenarios for stress-testing the front tracking engine."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraint import ConstraintData, Regime, build_constraint
from .grid import Grid, PiecewiseConstant, build_grid
from .model import Logarithmic, ModelParams, PowerLaw, State

REGIMES = (Regime.ZERO, Regime.BELOW_META, Regime.META, Regime.TOP)


@dataclass
class RandomCase:
    seed: int
    params: ModelParams
    data: ConstraintData
    grid: Grid
    datum: PiecewiseConstant


def random_params(rng: np.random.Generator) -> ModelParams:
    if rng.random() < 0.75:
        gamma = float(rng.uniform(1.2, 3.0))
        w_minus = float(rng.uniform(0.8, 1.5))
        v_max = gamma * w_minus / (gamma + 1.0)
        V = float(rng.uniform(0.3, 0.9) * v_max)
        w_plus = w_minus + float(rng.uniform(0.1, 0.8))
        return ModelParams(V, w_minus, w_plus, PowerLaw(gamma))
    v_ref = float(rng.uniform(0.8, 1.5))
    V = float(rng.uniform(0.3, 0.9) * v_ref)
    w_minus = V + float(rng.uniform(-0.6, 0.3))
    w_minus = max(w_minus, 0.2)
    w_plus = w_minus + float(rng.uniform(0.1, 0.6))
    return ModelParams(V, w_minus, w_plus, Logarithmic(v_ref, float(rng.uniform(1.0, 2.0))))


def random_flux(rng, params: ModelParams, regime: Regime) -> float:
    if regime is Regime.ZERO:
        return 0.0
    if regime is Regime.TOP:
        return params.f_c_plus
    if regime is Regime.BELOW_META:
        return float(rng.uniform(0.05, 0.95) * params.f_c_minus)
    if rng.random() < 0.1:
        return params.f_c_minus
    return float(params.f_c_minus + rng.uniform(0.05, 0.95) * (params.f_c_plus - params.f_c_minus))


def random_node(rng, grid: Grid) -> State:
    P = grid.params
    w = float(rng.choice(grid.w_values))
    if w < P.w_minus:
        return State(P.V, w)
    return State(float(rng.choice(grid.v_values)), w)


def random_datum(rng, grid: Grid, pieces: int, half_width=10.0) -> PiecewiseConstant:
    edges = np.sort(rng.uniform(-half_width, half_width, pieces - 1))
    if rng.random() < 0.3:
        edges[int(rng.integers(len(edges)))] = 0.0
        edges = np.unique(edges)
    values = [random_node(rng, grid) for _ in range(len(edges) + 1)]
    return PiecewiseConstant([float(x) for x in edges], values).merged()


def random_case(seed: int, n=None, regime=None, pieces=None) -> RandomCase:
    rng = np.random.default_rng(seed)
    params = random_params(rng)
    regime = regime or REGIMES[int(rng.integers(len(REGIMES)))]
    data = build_constraint(random_flux(rng, params, regime), params)
    n = n or int(rng.integers(2, 6))
    grid = build_grid(n, data)
    pieces = pieces or int(rng.integers(6, 20))
    return RandomCase(seed, params, data, grid, random_datum(rng, grid, pieces))
