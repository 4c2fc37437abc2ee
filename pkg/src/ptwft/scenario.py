"""Scenario files: a flat sectioned key-value format.

    # comment
    [model]
    pressure = power          # power | log
    gamma = 2                 # power law exponent
    V = 3/5
    w_minus = 1
    w_plus = 6/5
    [constraint]
    F = sqrt(3)/5
    [datum]
    piece = -inf, vacuum      # x_left, then v, w or the word vacuum
    piece = -8, 0, 1
    piece = -5, 0, 6/5
    piece = 0, vacuum
    [run]
    n = 6
    t_end = 60
    [output]
    times = 10, 20
    window = -10, 10
    dx = 0.05
    fronts = true

Numbers are expressions built from literals, + - * /, sqrt( ) and the
names V, w_minus, w_plus (model values), f_c_minus, f_c_plus (derived
critical fluxes) and inf.
"""
from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field

from .constraint import ConstraintData, build_constraint
from .grid import Grid, PiecewiseConstant, build_grid, project_datum
from .model import DomainError, Logarithmic, ModelParams, PowerLaw, State

SECTIONS = ("model", "constraint", "datum", "run", "output")
TOGGLES = ("fronts", "fields", "diagnostics", "plots")


class ScenarioError(ValueError):
    """Syntax or semantic problem in a scenario file."""


# ---------------------------------------------------------------------------
# expressions

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub,
           ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def evaluate(text: str, names=None) -> float:
    """Evaluate a restricted arithmetic expression."""
    names = {"inf": math.inf, **(names or {})}
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise ScenarioError(f"bad expression {text!r}") from e

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) in (int, float):
            return float(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords):
            x = ev(node.args[0])
            if x < 0:
                raise ScenarioError(f"sqrt of negative number in {text!r}")
            return math.sqrt(x)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ScenarioError(f"unknown name {node.id!r} in {text!r}")
            return float(names[node.id])
        raise ScenarioError(f"unsupported syntax in {text!r}")

    try:
        return ev(tree)
    except ZeroDivisionError as e:
        raise ScenarioError(f"division by zero in {text!r}") from e


# ---------------------------------------------------------------------------
# scenario


@dataclass
class Scenario:
    pressure: str = "power"
    pressure_args: dict = field(default_factory=lambda: {"gamma": 2.0})
    V: float = 0.0
    w_minus: float = 0.0
    w_plus: float = 0.0
    F: float = 0.0
    n: int = 4
    t_end: float = 1.0
    pieces: list = field(default_factory=list)   # (x_left, v, w); v is None for vacuum
    times: list = field(default_factory=list)
    window: tuple = (-10.0, 10.0)
    dx: float = 0.05
    emit: dict = field(default_factory=lambda: {k: True for k in TOGGLES})
    name: str = "scenario"

    def params(self) -> ModelParams:
        if self.pressure == "power":
            law = PowerLaw(self.pressure_args.get("gamma", 2.0))
        else:
            law = Logarithmic(self.pressure_args.get("v_ref", 1.0),
                              self.pressure_args.get("rho_max", 1.0))
        return ModelParams(self.V, self.w_minus, self.w_plus, law)

    def constraint(self) -> ConstraintData:
        return build_constraint(self.F, self.params())

    def grid(self, n=None) -> Grid:
        return build_grid(self.n if n is None else n, self.constraint())

    def raw_datum(self) -> PiecewiseConstant:
        P = self.params()
        pieces = [(x, P.vacuum if v is None else P.make_state(v, w)) for x, v, w in self.pieces]
        return PiecewiseConstant.from_pieces(pieces)

    def datum(self, grid: Grid) -> PiecewiseConstant:
        return project_datum(self.raw_datum(), grid)

    def sample_times(self):
        if self.times:
            return list(self.times)
        return [self.t_end] if math.isfinite(self.t_end) else []


def _split(line):
    return line.split("#", 1)[0].strip()


def _bool(text, where):
    t = text.strip().lower()
    if t in ("true", "yes", "on", "1"):
        return True
    if t in ("false", "no", "off", "0"):
        return False
    raise ScenarioError(f"{where}: expected a boolean, got {text!r}")


def parse_scenario(text: str, name="scenario") -> Scenario:
    entries = {s: [] for s in SECTIONS}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _split(raw)
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError(f"line {lineno}: unterminated section header")
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise ScenarioError(f"line {lineno}: unknown section [{section}]")
            continue
        if section is None:
            raise ScenarioError(f"line {lineno}: key outside any section")
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ScenarioError(f"line {lineno}: empty key or value")
        entries[section].append((lineno, key, value))
    return _build(entries, name)


def _single(entries, section, allowed):
    out = {}
    for lineno, key, value in entries[section]:
        if key not in allowed:
            raise ScenarioError(f"line {lineno}: unknown key {section}.{key}")
        if key in out:
            raise ScenarioError(f"line {lineno}: duplicate key {section}.{key}")
        out[key] = (lineno, value)
    return out


def _num(item, path, names=None):
    lineno, value = item
    try:
        return evaluate(value, names)
    except ScenarioError as e:
        raise ScenarioError(f"line {lineno}: {path}: {e}") from None


def _build(entries, name) -> Scenario:
    sc = Scenario(name=name)
    m = _single(entries, "model", ("pressure", "gamma", "v_ref", "rho_max", "V", "w_minus", "w_plus"))
    for key in ("V", "w_minus", "w_plus"):
        if key not in m:
            raise ScenarioError(f"model.{key} is required")
    sc.V = _num(m["V"], "model.V")
    sc.w_minus = _num(m["w_minus"], "model.w_minus")
    sc.w_plus = _num(m["w_plus"], "model.w_plus")
    names = {"V": sc.V, "w_minus": sc.w_minus, "w_plus": sc.w_plus}
    sc.pressure = m.get("pressure", (0, "power"))[1].strip().lower()
    if sc.pressure not in ("power", "log"):
        raise ScenarioError(f"model.pressure must be 'power' or 'log', got {sc.pressure!r}")
    keys = ("gamma",) if sc.pressure == "power" else ("v_ref", "rho_max")
    sc.pressure_args = {k: _num(m[k], f"model.{k}", names) for k in keys if k in m}
    try:
        P = sc.params()
    except DomainError as e:
        raise ScenarioError(f"model: {e}") from None
    names.update(f_c_minus=P.f_c_minus, f_c_plus=P.f_c_plus)

    c = _single(entries, "constraint", ("F",))
    if "F" not in c:
        raise ScenarioError("constraint.F is required")
    sc.F = _num(c["F"], "constraint.F", names)
    if not 0.0 <= sc.F <= P.f_c_plus + 1e-12:
        raise ScenarioError(f"constraint.F = {sc.F} outside [0, f_c_plus = {P.f_c_plus}]")

    for lineno, key, value in entries["datum"]:
        if key != "piece":
            raise ScenarioError(f"line {lineno}: unknown key datum.{key}")
        parts = [s.strip() for s in value.split(",")]
        x = _num((lineno, parts[0]), "datum.piece.x", names)
        if len(parts) == 2 and parts[1].lower() == "vacuum":
            sc.pieces.append((x, None, None))
            continue
        if len(parts) != 3:
            raise ScenarioError(f"line {lineno}: datum.piece needs x, v, w or x, vacuum")
        v = _num((lineno, parts[1]), "datum.piece.v", names)
        w = _num((lineno, parts[2]), "datum.piece.w", names)
        try:
            P.make_state(v, w)
        except DomainError as e:
            raise ScenarioError(f"line {lineno}: datum.piece: {e}") from None
        sc.pieces.append((x, v, w))
    if not sc.pieces:
        raise ScenarioError("datum needs at least one piece")
    xs = [p[0] for p in sc.pieces]
    if xs[0] != -math.inf:
        raise ScenarioError("datum: the first piece must start at -inf")
    if any(not math.isfinite(x) for x in xs[1:]) or any(b <= a for a, b in zip(xs[:-1], xs[1:])):
        raise ScenarioError("datum: piece edges must be finite and strictly increasing")

    r = _single(entries, "run", ("n", "t_end"))
    if "n" in r:
        n = _num(r["n"], "run.n")
        if n != int(n) or n < 2:
            raise ScenarioError(f"run.n must be an integer >= 2, got {n}")
        sc.n = int(n)
    if "t_end" in r:
        sc.t_end = _num(r["t_end"], "run.t_end", names)
        if not sc.t_end > 0:
            raise ScenarioError("run.t_end must be positive")

    o = _single(entries, "output", ("times", "window", "dx") + TOGGLES)
    if "times" in o:
        lineno, value = o["times"]
        sc.times = sorted(_num((lineno, s), "output.times", names) for s in value.split(","))
        if any(not 0 <= t <= sc.t_end for t in sc.times):
            raise ScenarioError(f"line {lineno}: output.times must lie in [0, t_end]")
    if "window" in o:
        lineno, value = o["window"]
        parts = value.split(",")
        if len(parts) != 2:
            raise ScenarioError(f"line {lineno}: output.window needs two numbers")
        a, b = (_num((lineno, s), "output.window", names) for s in parts)
        if not a < b:
            raise ScenarioError(f"line {lineno}: output.window must be increasing")
        sc.window = (a, b)
    if "dx" in o:
        sc.dx = _num(o["dx"], "output.dx", names)
        if not sc.dx > 0:
            raise ScenarioError("output.dx must be positive")
    for k in TOGGLES:
        if k in o:
            sc.emit[k] = _bool(o[k][1], f"line {o[k][0]}: output.{k}")
    return sc


def load_scenario(path) -> Scenario:
    from pathlib import Path
    p = Path(path)
    return parse_scenario(p.read_text(encoding="utf-8"), name=p.stem)


def tollgate_text() -> str:
    from importlib import resources
    return resources.files("ptwft").joinpath("data/tollgate.scn").read_text(encoding="utf-8")


def from_case(case, t_end=10.0) -> Scenario:
    """Scenario equivalent of a randomized campaign case (for `run --seed`)."""
    P = case.params
    law = P.pressure
    if isinstance(law, PowerLaw):
        kind, args = "power", {"gamma": law.gamma}
    else:
        kind, args = "log", {"v_ref": law.v_ref, "rho_max": law.rho_max}
    pieces = [(-math.inf, case.datum.values[0])] + list(zip(case.datum.edges, case.datum.values[1:]))
    return Scenario(pressure=kind, pressure_args=args, V=P.V, w_minus=P.w_minus, w_plus=P.w_plus,
                    F=case.data.F, n=case.grid.n, t_end=t_end,
                    pieces=[(x, u.v, u.w) for x, u in pieces], name=f"random-{case.seed}")
