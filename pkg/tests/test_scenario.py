import math

import pytest

from ptwft.scenario import ScenarioError, evaluate, parse_scenario, tollgate_text

MINIMAL = """
[model]
V = 3/5
w_minus = 1
w_plus = 6/5
[constraint]
F = 1/4
[datum]
piece = -inf, vacuum
"""


def test_expressions():
    assert evaluate("sqrt(3)/5") == math.sqrt(3) / 5
    assert evaluate("-(1 + 2) * 3 / 4") == -2.25
    assert evaluate("w_plus - V", {"w_plus": 1.2, "V": 0.6}) == pytest.approx(0.6)
    for bad in ("__import__('os')", "2 ** 3", "abs(1)", "x", "1/0", "sqrt(-1)", "1 +"):
        with pytest.raises(ScenarioError):
            evaluate(bad)


def test_minimal_defaults():
    sc = parse_scenario(MINIMAL)
    assert (sc.n, sc.t_end, sc.window) == (4, 1.0, (-10.0, 10.0))
    assert sc.pressure == "power" and sc.pieces == [(-math.inf, None, None)]
    assert sc.sample_times() == [1.0]


def test_tollgate_file():
    sc = parse_scenario(tollgate_text(), name="tollgate")
    assert (sc.V, sc.w_minus, sc.w_plus) == (0.6, 1.0, 1.2)
    assert sc.F == math.sqrt(3) / 5
    assert [p[0] for p in sc.pieces] == [-math.inf, -8.0, -5.0, 0.0]
    assert sc.pieces[1] == (-8.0, 0.0, 1.0) and sc.pieces[2] == (-5.0, 0.0, 1.2)
    assert sc.pressure_args == {"gamma": 2.0}
    P = sc.params()
    d = sc.datum(sc.grid())
    assert d.values[0] == P.vacuum and len(d.edges) == 3


def test_shipped_copy_matches_package_data():
    from pathlib import Path
    repo = Path(__file__).resolve().parents[1]
    assert (repo / "scenarios" / "tollgate.scn").read_text() == tollgate_text()


def test_F_above_critical_is_rejected():
    with pytest.raises(ScenarioError, match="f_c_plus"):
        parse_scenario(MINIMAL.replace("F = 1/4", "F = 1/2"))
    assert parse_scenario(MINIMAL.replace("F = 1/4", "F = f_c_plus")).F > 0.46


@pytest.mark.parametrize("text, msg", [
    ("V = 1", "line 1"),
    ("[model]\nV 1", "line 2"),
    ("[nope]", "unknown section"),
    (MINIMAL + "[run]\nn = 1.5\n", "run.n"),
    (MINIMAL + "piece = 0, 0.3, 0.5\n", "datum.piece"),
    (MINIMAL.replace("-inf", "0"), "-inf"),
    (MINIMAL + "[output]\nwindow = 3, 1\n", "window"),
    (MINIMAL + "[output]\nfields = maybe\n", "boolean"),
    (MINIMAL + "[model]\ncolour = 2\n", "model.colour"),
])
def test_errors(text, msg):
    with pytest.raises(ScenarioError, match=msg):
        parse_scenario(text)
