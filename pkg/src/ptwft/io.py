"""Writers for run artifacts. Every file starts with a versioned header line.

    fronts.txt        # ptwft-fronts v1
                      id t0 x0 t1 x1 kind v_l w_l v_r w_r   (one line per front segment)
    fields.csv        # ptwft-fields v1
                      t,x,rho,v,w,f                       (samples on the output window)
    traces.csv        # ptwft-traces v1
                      t,side,rho,v,w,f                    (side is 0- or 0+)
    diagnostics.json  {"format": "ptwft-diagnostics", "version": 1, ...}
    series.dat        # ptwft-series v1
                      t sharp T upsilon_hat upsilon_check  (whitespace columns)
    fronts.dat        # ptwft-frontlines v1
                      x t pairs, one blank-line separated block per segment
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import check_bounds
from .entropy import dissipation, ns_flux_property, rh_check, trace_times

FRONTS_HEADER = "# ptwft-fronts v1"
FIELDS_HEADER = "# ptwft-fields v1"
TRACES_HEADER = "# ptwft-traces v1"
SERIES_HEADER = "# ptwft-series v1"
FRONTLINES_HEADER = "# ptwft-frontlines v1"
DIAG_FORMAT = ("ptwft-diagnostics", 1)


def _g(x) -> str:
    return repr(float(x))


def _finite(x):
    x = float(x)
    return x if math.isfinite(x) else None


def write_fronts(path, trajectory):
    lines = [FRONTS_HEADER, "id t0 x0 t1 x1 kind v_l w_l v_r w_r"]
    for s in sorted(trajectory.segments, key=lambda s: (s.t0, s.x0, s.id)):
        a, b = s.wave.left, s.wave.right
        lines.append(" ".join([str(s.id), _g(s.t0), _g(s.x0), _g(s.t1), _g(s.x1),
                               s.wave.kind.value, _g(a.v), _g(a.w), _g(b.v), _g(b.w)]))
    Path(path).write_text("\n".join(lines) + "\n")


def field_rows(trajectory, times, window, dx):
    P = trajectory.params
    a, b = window
    xs = a + dx * np.arange(int(math.floor((b - a) / dx + 1e-9)) + 1)
    rows = []
    for t in times:
        for x, u in zip(xs, trajectory.sample(t, xs)):
            rows.append((t, float(x), P.rho(u), u.v, u.w, P.flux(u)))
    return rows


def write_fields(path, trajectory, times, window, dx):
    lines = [FIELDS_HEADER, "t,x,rho,v,w,f"]
    for row in field_rows(trajectory, times, window, dx):
        lines.append(",".join(_g(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_traces(path, trajectory, times):
    P = trajectory.params
    lines = [TRACES_HEADER, "t,side,rho,v,w,f"]
    for t in times:
        if t == 0.0:
            continue
        for side, u in zip(("0-", "0+"), trajectory.traces(t)):
            lines.append(",".join([_g(t), side, _g(P.rho(u)), _g(u.v), _g(u.w), _g(P.flux(u))]))
    Path(path).write_text("\n".join(lines) + "\n")


def write_series(path, trajectory):
    lines = [SERIES_HEADER, "t sharp T upsilon_hat upsilon_check"]
    for t, sharp, T, uh, uc in trajectory.series:
        lines.append(" ".join([_g(t), str(sharp), _g(T), _g(uh), _g(uc)]))
    Path(path).write_text("\n".join(lines) + "\n")


def write_frontlines(path, trajectory):
    lines = [FRONTLINES_HEADER, "# x t"]
    for s in sorted(trajectory.segments, key=lambda s: (s.t0, s.x0, s.id)):
        lines += [f"{_g(s.x0)} {_g(s.t0)}", f"{_g(s.x1)} {_g(s.t1)}", ""]
    Path(path).write_text("\n".join(lines) + "\n")


def _wave_json(wv):
    return {"kind": wv.kind.value, "speed": wv.speed,
            "left": [wv.left.v, wv.left.w], "right": [wv.right.v, wv.right.w]}


def ns_deactivation_time(trajectory):
    """End of the last stationary-shock interval, or None if it survives."""
    spans = ns_flux_property(trajectory).ns_intervals
    if not spans or spans[-1][1] >= trajectory.t_end:
        return None
    return spans[-1][1]


def diagnostics(trajectory, scenario=None) -> dict:
    rh = rh_check(trajectory)
    ent = dissipation(trajectory)
    cons = ns_flux_property(trajectory)
    bnd = check_bounds(trajectory)
    g = trajectory.grid
    doc = {
        "format": DIAG_FORMAT[0],
        "version": DIAG_FORMAT[1],
        "package_version": __version__,
        "scenario": None if scenario is None else scenario.name,
        "n": g.n,
        "eps_n": g.eps_n,
        "F": trajectory.data.F,
        "regime": trajectory.data.regime.name,
        "t_end": _finite(trajectory.t_end),
        "series": {
            "t": [r[0] for r in trajectory.series],
            "sharp": [r[1] for r in trajectory.series],
            "T": [r[2] for r in trajectory.series],
            "upsilon_hat": [r[3] for r in trajectory.series],
            "upsilon_check": [r[4] for r in trajectory.series],
        },
        "interactions": [
            {"time": r.time, "location": r.location, "row": r.table_row,
             "delta_sharp": r.delta_sharp, "delta_T": r.delta_T, "in_D1": r.in_d1,
             "status": r.status, "reason": r.reason,
             "incoming": [_wave_json(w) for w in r.incoming],
             "outgoing": [_wave_json(w) for w in r.outgoing]}
            for r in trajectory.records
        ],
        "table": {
            "mismatches": sum(r.status == "mismatch" for r in trajectory.records),
            "errata": sum(r.status == "erratum" for r in trajectory.records),
        },
        "rankine_hugoniot": {"max_rh1": rh.max_rh1, "max_rh2_off_ns": rh.max_rh2,
                             "ns_rh2": rh.ns_rh2, "fronts": rh.count, "ok": rh.ok},
        "entropy": {"ok": ent.ok, "m": ent.m, "violations": len(ent.violations),
                    "min_by_kind": ent.min_by_kind(), "rs_total": ent.rs_total,
                    "ns_min_total": min([r[2] for r in ent.ns_records], default=None),
                    "ns_max_minus_dQ": max([r[1] for r in ent.ns_records], default=None)},
        "constraint": {"max_excess": _finite(cons.max_excess), "max_ns_defect": cons.max_ns_defect,
                       "ns_intervals": [[a, _finite(b)] for a, b in cons.ns_intervals],
                       "ns_deactivation_time": ns_deactivation_time(trajectory),
                       "samples": cons.samples, "ok": cons.ok},
        "bounds": {"L": bnd.L, "T0": bnd.T0, "C_F": bnd.C_F, "L_F": bnd.L_F,
                   "max_tv_vw": bnd.max_tv_vw, "max_tv_u": bnd.max_tv_u,
                   "max_lipschitz_ratio": bnd.max_ratio, "ok": bnd.ok},
    }
    return doc


def _plain(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, default=_plain) + "\n"


def write_diagnostics(path, doc):
    Path(path).write_text(dumps(doc))


def write_run(out_dir, trajectory, scenario):
    """Write every enabled artifact; returns (paths, diagnostics document)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    em = scenario.emit
    paths = []
    times = scenario.sample_times()
    if em.get("fronts", True):
        paths.append(out / "fronts.txt")
        write_fronts(paths[-1], trajectory)
    if em.get("fields", True):
        paths.append(out / "fields.csv")
        write_fields(paths[-1], trajectory, times, scenario.window, scenario.dx)
        paths.append(out / "traces.csv")
        write_traces(paths[-1], trajectory, sorted(set(times) | set(trace_times(trajectory))))
    doc = diagnostics(trajectory, scenario)
    if em.get("diagnostics", True):
        paths.append(out / "diagnostics.json")
        write_diagnostics(paths[-1], doc)
    if em.get("plots", True):
        paths.append(out / "series.dat")
        write_series(paths[-1], trajectory)
        paths.append(out / "fronts.dat")
        write_frontlines(paths[-1], trajectory)
    return paths, doc
