import json
import random

import pytest

from exclusionpoly import serialize
from exclusionpoly.cli import convex_polygon, main
from exclusionpoly.polytope import generating_vertices, inner_outer, membership, facets, prime_weights
from exclusionpoly.gok import excitation_gaps, weighted_energy
from exclusionpoly.sampling import random_spectrum

W3 = "1/2,2/5,1/10"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_lineups_counts(capsys):
    assert run_json(capsys, "lineups", "--r", "4")["count"] == 4
    assert run_json(capsys, "lineups", "--r", "5")["count"] == 10
    sub = run_json(capsys, "lineups", "--n", "1", "--d", "3", "--r", "2")
    assert [lu["configurations"] for lu in sub["lineups"]] == [[[1], [2]]]


def test_lineups_usage_errors(capsys):
    assert run(capsys, "lineups")[0] == 2
    assert run(capsys, "lineups", "--n", "2", "--d", "3", "--r", "5")[0] == 2
    assert run(capsys, "lineups", "--d", "3", "--r", "2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_check_vertex_is_inside_and_tight(capsys):
    out = run_json(capsys, "check", "--lambda", "0.9,0.6,0.5", "--weights", W3)
    assert out["inside"] and out["closed_form"]["tight"]
    assert out["certificate"]["simplex_coefficients"] == ["1"]


def test_check_uniform_inside(capsys):
    assert run_json(capsys, "check", "--lambda", "1/2,1/2,1/2,1/2,1/2,1/2", "--r", "4")["inside"]


def test_check_outside(capsys):
    out = run_json(capsys, "check", "--lambda", "1,19/20,1/20", "--n", "2", "--d", "3", "--weights", W3)
    assert not out["inside"]
    assert out["certificate"]["violated_prefix"] == 2
    assert out["closed_form"]["violated"]


def test_check_malformed(capsys):
    assert run(capsys, "check", "--lambda", "1,x", "--weights", W3)[0] == 2
    assert run(capsys, "check", "--lambda", "1,1,1/2", "--weights", W3)[0] == 2
    assert run(capsys, "check", "--lambda", "1,1/2,1/2", "--n", "3", "--weights", W3)[0] == 2
    assert run(capsys, "check", "--lambda", "1,1/2,1/2", "--weights", "1/2,1/3")[0] == 2
    assert run(capsys, "check", "--weights", W3)[0] == 2


def test_figure_data_polygons(capsys):
    hexagon = run_json(capsys, "figure-data", "--weights", W3)
    poly = hexagon["sigma"]["polygon"]
    assert len(poly) == 6
    assert {tuple(p) for p in poly} == {("9/10", "3/5"), ("9/10", "1/2"), ("3/5", "9/10"), ("3/5", "1/2"), ("1/2", "9/10"), ("1/2", "3/5")}
    tri = run_json(capsys, "figure-data", "--weights", "1,0,0")["sigma"]["polygon"]
    assert sorted(map(tuple, tri)) == [("0", "1"), ("1", "0"), ("1", "1")]
    point = run_json(capsys, "figure-data", "--weights", "1/3,1/3,1/3")["sigma"]["polygon"]
    assert point == [["2/3", "2/3"]]
    assert run(capsys, "figure-data", "--n", "3", "--d", "6", "--r", "2")[0] == 2


def test_figure_data_csv(capsys):
    code, out, _ = run(capsys, "figure-data", "--weights", W3, "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "region,index,lambda1,lambda2"
    assert sum(1 for ln in lines if ln.startswith("sigma,")) == 6


def test_convex_polygon_drops_collinear():
    pts = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
    assert convex_polygon(pts) == [(0, 0), (2, 0), (2, 2), (0, 2)]


def test_facets_command(capsys):
    out = run_json(capsys, "facets", "--n", "2", "--d", "3", "--weights", W3, "--minimal")
    rows = {(tuple(r["coeffs"]), r["bound"]) for r in out["inequalities"]}
    assert rows == {((1, 1, 0), "3/2"), ((1, 0, 0), "9/10")}
    assert out["closed_form"]["matches_hull"]
    assert run(capsys, "facets", "--weights", "1/2,1/2")[0] == 2


def test_approx_command(capsys):
    out = run_json(capsys, "approx", "--n", "3", "--d", "6", "--weights", "1/2,1/3,1/6")
    assert out["v_plus"] == ["1", "1", "1/2", "1/2", "0", "0"]


def test_gok_and_gaps(capsys):
    out = run_json(capsys, "gok", "--h", "1,2,3", "--n", "2", "--weights", W3)
    assert out["value"] == "18/5" and out["agree"]
    assert out["minimizer_occupation"] == ["9/10", "3/5", "1/2"]
    gaps = run_json(capsys, "gaps", "--h", "1,2,3", "--n", "2", "--r", "3")
    assert gaps["gaps"] == ["1", "2"] == gaps["derivative_gaps"]
    assert run(capsys, "gok", "--h", "3,2,1", "--n", "2", "--weights", W3)[0] == 2
    assert run(capsys, "gaps", "--h", "1,2,3", "--r", "2")[0] == 2


def test_dft_check(capsys):
    assert not run_json(capsys, "dft-check", "--occupations", "3/2,1/2,0", "--weights", "1,0,0")["inside"]
    assert run_json(capsys, "dft-check", "--lambda", "2/3,2/3,2/3", "--weights", W3)["inside"]


def test_table_with_truncation(capsys):
    out = run_json(capsys, "table", "--rmax", "6", "--budget", "5", "--hull-max-dim", "7")
    rows = out["rows"]
    assert [r["vertices"] for r in rows[:5]] == [1, 1, 2, 4, 10]
    assert [r["ineq"] for r in rows[:5]] == [1, 2, 3, 5, 8]
    assert out["truncated"] and rows[5]["truncated"] and rows[5]["vertices"] is None
    code, text, _ = run(capsys, "table", "--rmax", "3", "--budget", "2", "--format", "csv")
    assert text.strip().splitlines()[-1] == "3,,,TRUNCATED"


def test_verify_passes(capsys):
    out = run_json(capsys, "verify", "--samples", "5", "--seed", "3")
    assert out["ok"] and len(out["suites"]) == 9


def test_verify_single_suite_text(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "5", "--suite", "hierarchy", "--format", "text")
    assert code == 0 and out.startswith("PASS  hierarchy")


def test_property_violation_exit_code(capsys, monkeypatch):
    import exclusionpoly.cli as cli
    from exclusionpoly.verify import SuiteResult

    def broken(seed, samples, only=None):
        return [SuiteResult("fake", 1, ["boom"])]

    monkeypatch.setattr(cli, "run_all", broken)
    assert run(capsys, "verify")[0] == 1


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nweights = 1/2,2/5,1/10\nformat = json\nlambda = \"2/3, 2/3, 2/3\"\n")
    out = run_json(capsys, "check", "--config", str(cfg))
    assert out["inside"] and out["n"] == 2
    # command line wins over the file
    out = run_json(capsys, "check", "--config", str(cfg), "--lambda", "1,19/20,1/20")
    assert not out["inside"]
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "check", "--config", str(bad))[0] == 2
    assert run(capsys, "check", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_output_is_deterministic(capsys):
    a = run(capsys, "vertices", "--r", "5", "--format", "csv")[1]
    b = run(capsys, "vertices", "--r", "5", "--format", "csv")[1]
    assert a == b
    a = run(capsys, "verify", "--samples", "3", "--seed", "9")[1]
    b = run(capsys, "verify", "--samples", "3", "--seed", "9")[1]
    assert a == b


def test_approx_decimals_field(capsys):
    out = run_json(capsys, "gok", "--h", "1,2,3", "--n", "2", "--weights", W3, "--approx-decimals", "2")
    assert out["value_approx"] == "3.60"
    assert out["minimizer_occupation_approx"] == ["0.90", "0.60", "0.50"]


def test_text_outputs(capsys):
    for argv in (["lineups", "--r", "3"], ["vertices", "--r", "3"], ["approx", "--r", "3"],
                 ["facets", "--r", "3"], ["gok", "--h", "0,1,2,4", "--n", "2", "--r", "3"],
                 ["gaps", "--h", "0,1,2,4", "--n", "2", "--r", "3"], ["table", "--rmax", "2"],
                 ["check", "--lambda", "1,1,0,0", "--r", "3"], ["dft-check", "--lambda", "1,1,0,0", "--r", "3"]):
        for fmt in ("text", "csv", "json"):
            code, out, _ = run(capsys, *argv, "--format", fmt)
            assert code == 0 and out.strip()


def _objects():
    rng = random.Random(1)
    w = prime_weights(3)
    vs = generating_vertices(2, 4, w)
    objs = [vs, inner_outer(vs), facets(vs), weighted_energy((0, 1, 2, 5), w, 2), excitation_gaps((0, 1, 2, 5), 2, 3)]
    objs += [membership(random_spectrum(rng, vs), vs) for _ in range(10)]
    objs += list(vs.provenance)
    return objs


@pytest.mark.parametrize("obj", _objects(), ids=lambda o: type(o).__name__)
def test_json_round_trip(obj):
    text = serialize.dumps(obj)
    assert serialize.loads(text) == obj
    assert "." not in json.dumps(json.loads(text)).replace("...", "")  # no floats anywhere
    assert serialize.loads(serialize.dumps(obj, approx_decimals=4)) == obj


def test_unknown_tag_rejected():
    from exclusionpoly.errors import StructuralError
    with pytest.raises(StructuralError):
        serialize.from_dict({"type": "Nope"})
    with pytest.raises(StructuralError):
        serialize.to_dict(object())
