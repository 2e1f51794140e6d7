import json

import pytest

from gograph import catalog
from gograph.catalog import to_definition
from gograph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--output", "json", *argv)
    return code, json.loads(out), out


def test_linear_graph_text(capsys):
    code, out, _ = run(capsys, "graph", "--space", "s5-u3", "--mode", "riemannian")
    assert code == 0
    assert out.strip() == "Linear: xi = (-2*z*c + 3/2*z)*H0"


def test_nr_check_after_complement_change(capsys):
    code, data, _ = run_json(capsys, "check", "nr", "--space", "s7-sp2sp1")
    assert code == 0 and data["ok"] is True
    assert data["given_complement"] is False
    code, data, _ = run_json(capsys, "check", "nr", "--space", "s7-sp2")
    assert code == 2 and data["ok"] is False


def test_invariant_vectors_empty(capsys):
    code, data, _ = run_json(capsys, "invariant-vectors", "--space", "cp3-sp2")
    assert code == 0 and data["dim"] == 0 and data["basis"] == []
    code, data, _ = run_json(capsys, "invariant-vectors", "--space", "s7-sp2")
    assert data["basis"] == ["Z1", "Z2", "Z3"]


@pytest.mark.parametrize("what", ["jacobi", "reductive", "invariance"])
def test_structural_checks_pass_on_catalog(capsys, what):
    for id in catalog.ids():
        code, data, _ = run_json(capsys, "check", what, "--space", id)
        assert code == 0 and data["ok"], (id, what)


def test_notgo_exit_code(capsys):
    code, out, _ = run(capsys, "graph", "--space", "s7-sp2")
    assert code == 2 and out.startswith("Unsolvable")
    code, out, _ = run(capsys, "go", "--space", "s7-sp2", "--mode", "riemannian")
    assert code == 2 and "NotGO" in out
    code, out, _ = run(capsys, "go", "--space", "s7-sp2", "--mode", "riemannian", *sum((["--param", f"c{i}=1"] for i in (1, 2, 3)), []))
    assert code == 0 and out.startswith("GO")


def test_graph_routes(capsys):
    code, out, _ = run(capsys, "graph", "--space", "s5-u3", "--complement", "nr", "--via", "pnr")
    assert code == 0 and out.strip() == "Linear: xi = -2*c*zeta*H0"
    code, direct, _ = run_json(capsys, "graph", "--space", "s7-sp2u1", "--complement", "central")
    code, t2, _ = run_json(capsys, "graph", "--space", "s7-sp2u1", "--complement", "central", "--via", "t2")
    assert direct["components"] == t2["components"] and t2["route"] == "t2"
    code, t2r, _ = run_json(capsys, "graph", "--space", "s7-sp2u1", "--complement", "central", "--via", "t2", "--phi", "riemannian")
    assert all("zeta" not in c for c in t2r["components"].values())


def test_pnr_falls_back_to_center(capsys, tmp_path):
    doc = to_definition(catalog.load("s5-u3", "nr"))
    del doc["central"]
    path = tmp_path / "nr.json"
    path.write_text(json.dumps(doc))
    code, data, _ = run_json(capsys, "graph", "--space", str(path), "--via", "pnr")
    assert code == 0 and data["components"]["H0"] == "-2*c*zeta"


def test_system_printout(capsys):
    code, out, _ = run(capsys, "system", "--space", "s5-su3")
    lines = out.splitlines()
    assert lines[0] == "unknowns: H1, H2, H3"
    assert lines[1].count("|") == 2
    assert lines[-1] == "rank(A) = 3, rank(augmented) = 3"
    code, data, _ = run_json(capsys, "system", "--space", "s5-su3")
    assert data["rank_A"] == 3 and len(data["A"]) == 5 and data["C"][0] == "-2*x2*c*v*zeta"


def test_center_and_extend(capsys):
    code, data, _ = run_json(capsys, "center", "--space", "s5-u3")
    assert data["dim"] == 1 and data["basis"][0]["m_part"] == "Z"
    code, data, _ = run_json(capsys, "center", "--space", "s7-sp2")
    assert data["dim"] == 0
    code, data, _ = run_json(capsys, "extend", "--space", "s5-su3", "--v", "Z=1")
    assert code == 0 and data["generators"] == ["W1"] and data["central"] == ["Z - W1"]
    code, _, err = run(capsys, "extend", "--space", "s7-sp2", "--v", "Z1=1")
    assert code == 1 and "skew" in err


def test_catalog_commands(capsys):
    code, data, _ = run_json(capsys, "catalog", "list")
    assert [e["id"] for e in data["entries"]] == catalog.ids()
    code, data, _ = run_json(capsys, "catalog", "show", "s7-sp2")
    assert ["X1", "X2", "2*H1 - 2*Z1"] in data["bracket_table"]
    assert data["adjoint_operators"]["H1"][1][0] == "1"
    code, _, err = run(capsys, "catalog", "show")
    assert code == 1


def test_verify_is_reproducible(capsys):
    argv = ("verify", "--space", "s7-sp2u1", "--complement", "central", "--phi", "quadratic", "--samples", "5")
    code, first, raw1 = run_json(capsys, *argv)
    code2, second, raw2 = run_json(capsys, *argv)
    assert code == code2 == 0 and raw1 == raw2
    assert first["passed"] and first["max_residual"] < 1e-6
    _, other, raw3 = run_json(capsys, *argv, "--seed", "5")
    assert raw3 != raw1 and other["seed"] == 5


def test_verify_with_bound_parameters(capsys):
    code, data, _ = run_json(capsys, "verify", "--space", "s5-u3", "--samples", "3", "--param", "c=2", "--param", "v=1/4")
    assert code == 0 and data["values"]["c"] == 2.0
    # -2*c*v*zeta - (2*c - 3/2)*z at c = 2, v = 1/4
    assert data["graph"]["components"]["H0"] == "-5/2*z - zeta"


def test_vector_specifications(capsys):
    code, data, _ = run_json(capsys, "graph", "--space", "s7-sp2", "--v", "auto")
    assert code == 2 and data["classification"] == "unsolvable"
    code, data, _ = run_json(capsys, "system", "--space", "s7-sp2", "--v", "Z1=1")
    assert code == 0 and data["rank_augmented"] == 4
    code, _, err = run(capsys, "system", "--space", "s7-sp2", "--v", "X1=1")
    assert code == 1 and "moved" in err


def test_admissibility(capsys):
    code, data, _ = run_json(capsys, "admissibility", "--phi", "randers", "--b", "0.99")
    assert code == 0 and data["margin"] == pytest.approx(1.0)
    code, data, _ = run_json(capsys, "admissibility", "--phi", "quadratic", "--b", "0.95")
    assert code == 0 and data["margin"] == pytest.approx(0.0975)
    code, _, err = run(capsys, "admissibility", "--phi", "randers", "--b", "1.5")
    assert code == 1 and "outside" in err


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (("graph", "--space", "nowhere"), "neither a catalog id"),
        (("graph", "--space", "s5-su3", "--param", "c=-1"), "positive"),
        (("graph", "--space", "s5-su3", "--param", "q=1"), "not a parameter"),
        (("graph", "--space", "s5-su3", "--param", "c"), "name=value"),
        (("graph", "--space", "s5-su3", "--param", "c=abc"), "rational"),
        (("graph", "--space", "cp2-su3", "--mode", "finsler"), "invariant vector"),
        (("graph",), "--space is required"),
        (("graph", "--space", "s7-sp2u1", "--via", "t2"), "not central"),
    ],
)
def test_input_errors(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    assert fragment in err


def test_usage_errors_exit_with_input_status(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_definition_file_input(capsys, tmp_path):
    path = tmp_path / "space.json"
    path.write_text(json.dumps(to_definition(catalog.load("s7-sp2sp1"))))
    code, out, _ = run(capsys, "graph", "--space", str(path))
    assert code == 0 and out.startswith("Linear")


def test_json_reports_round_trip(capsys):
    for argv in (("graph", "--space", "s5-su3"), ("center", "--space", "s5-u3"), ("check", "nr", "--space", "s5-u3")):
        _, data, raw = run_json(capsys, *argv)
        assert json.dumps(data, indent=2, sort_keys=True) == raw.rstrip("\n")
