"""Command line interface.

Exit codes: 0 ok, 2 invalid input, 3 guard breach, 4 interaction table mismatch.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .campaign import random_case
from .constraint import build_constraint
from .grid import build_grid
from .model import DomainError
from .riemann import solve, solve_constrained, solve_grid, solve_grid_constrained
from .scenario import ScenarioError, evaluate, load_scenario, from_case
from .wft import GuardBreach, TableMismatch, simulate, l1_profiles, tv_profile

OUT_ENV = "PTWFT_OUT"
EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_TABLE = 0, 2, 3, 4

EPILOG = """\
artifacts written by `run` (directory from --out, else $PTWFT_OUT, else ./ptwft-out):
  fronts.txt        id t0 x0 t1 x1 kind v_l w_l v_r w_r, one line per front segment
  fields.csv        t,x,rho,v,w,f on the output window at the sample times
  traces.csv        t,side,rho,v,w,f at x = 0- and 0+ between consecutive events
  diagnostics.json  T_n and wave-count series, interaction records, RH, entropy,
                    constraint and a-priori bound reports
  series.dat        columns: t sharp T upsilon_hat upsilon_check
  fronts.dat        x t pairs, one blank-line separated block per segment
                    (gnuplot: plot 'fronts.dat' with lines)
exit codes: 0 ok, 2 invalid input, 3 guard breach, 4 interaction table mismatch
"""


def _out_dir(arg):
    return Path(arg or os.environ.get(OUT_ENV) or "ptwft-out")


def _scenario(args):
    if args.file:
        return load_scenario(args.file)
    if args.seed is None:
        raise ScenarioError("give a scenario file or --seed")
    return from_case(random_case(args.seed), t_end=args.t_end or 10.0)


def _simulate(sc, n=None):
    grid = sc.grid(n)
    return simulate(sc.datum(grid), grid, grid.data, sc.t_end, strict=False)


def _table_failures(traj, verbatim):
    bad = ("mismatch", "erratum") if verbatim else ("mismatch",)
    return [r for r in traj.records if r.status in bad]


def cmd_run(args):
    sc = _scenario(args)
    if args.n:
        sc.n = args.n
    if args.t_end:
        sc.t_end = args.t_end
    traj = _simulate(sc)
    out = _out_dir(args.out)
    paths, doc = io.write_run(out, traj, sc)
    c = doc["constraint"]
    print(f"{sc.name}: n={sc.n} interactions={len(traj.records)} "
          f"segments={len(traj.segments)} errata={doc['table']['errata']} "
          f"mismatches={doc['table']['mismatches']}")
    if c["ns_deactivation_time"] is not None:
        print(f"stationary shock deactivates at t = {c['ns_deactivation_time']:.6f}")
    for p in paths:
        print(f"wrote {p}")
    bad = _table_failures(traj, args.verbatim_table)
    if bad:
        r = bad[0]
        print(f"table check failed at t={r.time:.6g}: {r.reason}", file=sys.stderr)
        return EXIT_TABLE
    return EXIT_OK


def _pair(text, names):
    parts = text.split(",")
    if len(parts) != 2:
        raise ScenarioError(f"expected v,w, got {text!r}")
    return tuple(evaluate(s, names) for s in parts)


def cmd_riemann(args):
    from .model import ModelParams, PowerLaw
    P = ModelParams(evaluate(args.V), evaluate(args.w_minus), evaluate(args.w_plus),
                    PowerLaw(evaluate(args.gamma)))
    names = {"V": P.V, "w_minus": P.w_minus, "w_plus": P.w_plus,
             "f_c_minus": P.f_c_minus, "f_c_plus": P.f_c_plus}
    vac = {"vacuum", "vac"}
    u_l = P.vacuum if args.left in vac else P.make_state(*_pair(args.left, names))
    u_r = P.vacuum if args.right in vac else P.make_state(*_pair(args.right, names))
    data = None if args.F is None else build_constraint(evaluate(args.F, names), P)
    if args.n is not None:
        grid = build_grid(args.n, data or build_constraint(P.f_c_plus, P))
        pl, pr = grid.project_state(u_l), grid.project_state(u_r)
        if (pl, pr) != (u_l, u_r):
            print(f"projected onto the grid: {pl!r} {pr!r}")
        fan = (solve_grid(pl, pr, grid) if data is None
               else solve_grid_constrained(pl, pr, grid, data))
    else:
        fan = solve(u_l, u_r, P) if data is None else solve_constrained(u_l, u_r, data)
    if not fan.waves:
        print("no waves")
        return EXIT_OK
    counts = {}
    for wv in fan.waves:
        counts[wv.kind.value] = counts.get(wv.kind.value, 0) + 1
        print(wv)
    print("waves: " + ", ".join(f"{k} x{v}" for k, v in counts.items()))
    return EXIT_OK


def _converge_one(job):
    sc, n = job
    traj = _simulate(sc, n)
    prof = traj.profile(min(sc.t_end, traj.t_end))
    dv, dw, du = tv_profile(prof[1], traj.params)
    return n, prof, {"n": n, "interactions": len(traj.records), "T0": traj.temple0.total,
                     "T_end": traj.series[-1][2], "tv_vw": dv + dw, "tv_u": du,
                     "mismatches": len(_table_failures(traj, False))}


def converge(sc, n_list, jobs=1):
    """Per-n summaries and L1 distances of consecutive refinements at t_end."""
    if list(n_list) != sorted(set(n_list)):
        raise ScenarioError("--n list must be strictly increasing")
    if not math.isfinite(sc.t_end):
        raise ScenarioError("converge needs a finite t_end")
    work = [(sc, n) for n in n_list]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_converge_one, work))
    else:
        results = [_converge_one(w) for w in work]
    P = sc.params()
    a, b = sc.window
    rows = [r[2] for r in results]
    for (_, pa, ra), (_, pb, _) in zip(results[:-1], results[1:]):
        ra["l1_to_next"] = l1_profiles(pa, pb, P, a, b)
    rows[-1]["l1_to_next"] = None
    return rows


def cmd_converge(args):
    sc = _scenario(args)
    if args.t_end:
        sc.t_end = args.t_end
    n_list = [int(s) for s in args.n.split(",")]
    rows = converge(sc, n_list, args.jobs)
    print(f"{'n':>3} {'events':>8} {'T_n(0)':>10} {'T_n(end)':>10} {'TV(u)':>10} {'L1 to next':>12}")
    for r in rows:
        l1 = "" if r["l1_to_next"] is None else f"{r['l1_to_next']:.6e}"
        print(f"{r['n']:>3} {r['interactions']:>8} {r['T0']:>10.6f} {r['T_end']:>10.6f} "
              f"{r['tv_u']:>10.6f} {l1:>12}")
    if args.out or os.environ.get(OUT_ENV):
        out = _out_dir(args.out)
        out.mkdir(parents=True, exist_ok=True)
        doc = {"format": "ptwft-converge", "version": 1, "scenario": sc.name,
               "t_end": sc.t_end, "window": list(sc.window), "rows": rows}
        (out / "converge.json").write_text(io.dumps(doc))
    if any(r["mismatches"] for r in rows):
        return EXIT_TABLE
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="ptwft", description=__doc__.splitlines()[0],
                                 epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="track a scenario and write artifacts", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    r.add_argument("file", nargs="?", help="scenario file")
    r.add_argument("--seed", type=int, help="run a randomized scenario instead of a file")
    r.add_argument("--n", type=int, help="override the refinement level")
    r.add_argument("--t-end", type=float, help="override the final time")
    r.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./ptwft-out)")
    r.add_argument("--verbatim-table", action="store_true",
                   help="also fail on rows that only match the corrected table")
    r.set_defaults(func=cmd_run)

    q = sub.add_parser("riemann", help="print the solution of one Riemann problem")
    q.add_argument("--left", required=True, help="v,w or 'vacuum'")
    q.add_argument("--right", required=True, help="v,w or 'vacuum'")
    q.add_argument("--F", help="flux constraint at x = 0")
    q.add_argument("--n", type=int, help="use the grid solver at this refinement")
    q.add_argument("--V", default="3/5")
    q.add_argument("--w-minus", default="1")
    q.add_argument("--w-plus", default="6/5")
    q.add_argument("--gamma", default="2", help="power-law pressure exponent")
    q.set_defaults(func=cmd_riemann)

    c = sub.add_parser("converge", help="L1 differences across refinement levels")
    c.add_argument("file", nargs="?", help="scenario file")
    c.add_argument("--seed", type=int)
    c.add_argument("--n", default="3,4,5,6", help="comma separated increasing levels")
    c.add_argument("--t-end", type=float)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_converge)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, DomainError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GuardBreach as e:
        print(f"guard breach: {e}", file=sys.stderr)
        return EXIT_GUARD
    except TableMismatch as e:
        print(f"table mismatch: {e}", file=sys.stderr)
        return EXIT_TABLE


if __name__ == "__main__":
    sys.exit(main())
