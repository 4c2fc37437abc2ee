import json
import math

import pytest

from ptwft.cli import converge, main
from ptwft.scenario import load_scenario, parse_scenario, tollgate_text
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
T_L = 24.47164233868628


def read(path):
    return Path(path).read_text()


@pytest.fixture(scope="module")
def tollgate_out(tmp_path_factory):
    out = tmp_path_factory.mktemp("toll")
    assert main(["run", str(REPO / "scenarios" / "tollgate.scn"), "--out", str(out)]) == 0
    return out


def test_run_artifacts(tollgate_out):
    names = {p.name for p in tollgate_out.iterdir()}
    assert names == {"fronts.txt", "fields.csv", "traces.csv", "diagnostics.json",
                     "series.dat", "fronts.dat"}
    assert read(tollgate_out / "fronts.txt").startswith("# ptwft-fronts v1\n")
    assert read(tollgate_out / "fields.csv").startswith("# ptwft-fields v1\nt,x,rho,v,w,f\n")
    doc = json.loads(read(tollgate_out / "diagnostics.json"))
    assert (doc["format"], doc["version"]) == ("ptwft-diagnostics", 1)
    assert abs(doc["constraint"]["ns_deactivation_time"] - T_L) < 2e-2
    assert doc["table"] == {"mismatches": 0, "errata": 1}
    assert doc["rankine_hugoniot"]["ok"] and doc["entropy"]["ok"] and doc["bounds"]["ok"]


def test_fronts_file_geometry(tollgate_out):
    lines = read(tollgate_out / "fronts.txt").splitlines()[2:]
    by_id = {}
    for ln in lines:
        f = ln.split()
        by_id.setdefault(int(f[0]), []).append(tuple(map(float, f[1:5])) + (f[5],))
    for segs in by_id.values():
        segs.sort()
        for a, b in zip(segs[:-1], segs[1:]):
            assert a[2] == b[0] and a[3] == pytest.approx(b[1], abs=1e-9)
        for t0, x0, t1, x1, kind in segs:
            speed = (x1 - x0) / (t1 - t0)
            if kind in ("S", "RS"):
                assert speed < 0
            if kind == "CD":
                assert speed >= -1e-12
            if kind == "NS":
                assert x0 == 0.0 and x1 == 0.0


def test_traces_respect_constraint(tollgate_out):
    F = math.sqrt(3) / 5
    rows = read(tollgate_out / "traces.csv").splitlines()[2:]
    assert rows
    for r in rows:
        assert float(r.split(",")[5]) <= F + 1e-10


def test_determinism(tmp_path, tollgate_out):
    assert main(["run", str(REPO / "scenarios" / "tollgate.scn"), "--out", str(tmp_path)]) == 0
    for p in tollgate_out.iterdir():
        assert read(p) == read(tmp_path / p.name)


def test_seeded_run_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--seed", "11", "--out", str(a)]) == 0
    assert main(["run", "--seed", "11", "--out", str(b)]) == 0
    assert all(read(p) == read(b / p.name) for p in a.iterdir())


def test_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("PTWFT_OUT", str(tmp_path / "env"))
    assert main(["run", str(REPO / "scenarios" / "constant.scn")]) == 0
    fronts = read(tmp_path / "env" / "fronts.txt").splitlines()
    assert len(fronts) == 2          # header lines only
    rows = read(tmp_path / "env" / "fields.csv").splitlines()[2:]
    assert len({r.split(",", 2)[2] for r in rows}) == 1


def test_exit_codes(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.scn")]) == 2
    bad = tmp_path / "bad.scn"
    bad.write_text(read(REPO / "scenarios" / "constant.scn").replace("sqrt(3)/5", "1"))
    assert main(["run", str(bad), "--out", str(tmp_path)]) == 2
    assert "f_c_plus" in capsys.readouterr().err
    assert main(["run", str(REPO / "scenarios" / "tollgate.scn"), "--n", "3",
                 "--out", str(tmp_path / "v"), "--verbatim-table"]) == 4


def test_riemann_command(capsys):
    assert main(["riemann", "--left", "0,1", "--right", "0,1"]) == 0
    assert capsys.readouterr().out.strip() == "no waves"
    assert main(["riemann", "--left", "0,6/5", "--right", "vacuum", "--F", "sqrt(3)/5", "--n", "6"]) == 0
    out = capsys.readouterr().out
    assert "waves: RS x64, NS x1, CD x1" in out
    args = ["riemann", "--left", "V,1/2", "--right", "3/10,11/10"]
    main(args)
    a = capsys.readouterr().out
    main(args + ["--F", "sqrt(3)/5"])
    assert capsys.readouterr().out == a
    assert main(["riemann", "--left", "0.3,0.5", "--right", "vacuum"]) == 2


def test_converge_tollgate_trend():
    sc = load_scenario(REPO / "scenarios" / "tollgate.scn")
    sc.t_end = 5.0
    rows = converge(sc, [3, 4, 5, 6])
    d = [r["l1_to_next"] for r in rows[:-1]]
    assert d[0] > d[1] > d[2] and d[2] < 0.7 * d[0]
    assert rows[-1]["l1_to_next"] is None


def test_converge_single_shock_exact():
    rows = converge(load_scenario(REPO / "scenarios" / "single_shock.scn"), [2, 3, 4])
    assert all(r["l1_to_next"] <= 1e-12 for r in rows[:-1])


def test_converge_top_flux_equals_unconstrained():
    from ptwft.wft import simulate
    sc = parse_scenario(tollgate_text().replace("sqrt(3)/5", "f_c_plus"))
    sc.t_end = 8.0
    g = sc.grid(4)
    tr = simulate(sc.datum(g), g, g.data, 8.0)
    assert not any("NS" in r.table_row or "_F" in r.table_row for r in tr.records)
    assert all(g.data.in_D1(a, b) for a in g.states()[::13] for b in g.states()[::17])


def test_module_entry_point():
    import subprocess, sys
    r = subprocess.run([sys.executable, "-m", "ptwft", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "fronts.txt" in r.stdout
