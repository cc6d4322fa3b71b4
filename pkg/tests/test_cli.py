import csv
import io
import json

import pytest

from qhs_lab.cli import RunConfig, UsageError, main, parse_seed, resolve_symmetry, run
from qhs_lab.polytope import build_cube, build_lobell

from conftest import DATA, ROOT


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_z7_qhs(capsys):
    code, out, _ = call(capsys, "check", "--polytope", "lobell:7",
                        "--colouring", str(DATA / "z7.mat"), "--qhs", "--threads", "1")
    assert code == 0
    assert "verdict: QHS" in out
    assert "betti: 1 0 0 1" in out


def test_check_improper_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.mat"
    # facets 1 and 4 of the cube are adjacent and both get e1
    bad.write_text("polytope: cube\n100100\n010010\n001001\n")
    code, out, _ = call(capsys, "check", "--colouring", str(bad))
    assert code == 1
    assert "not proper" in out


def test_check_qhs_flag_negative_verdict(tmp_path, capsys):
    lam = tmp_path / "torus.mat"
    # paired opposite facets: the 3-torus, proper but not a QHS
    lam.write_text("polytope: cube\n110000\n001100\n000011\n")
    assert call(capsys, "check", "--colouring", str(lam))[0] == 0
    code, out, _ = call(capsys, "check", "--colouring", str(lam), "--qhs")
    assert code == 1
    assert "betti: 1 3 3 1" in out


def test_input_errors_exit_two(tmp_path, capsys):
    code, _, err = call(capsys, "check", "--colouring", str(tmp_path / "missing.mat"))
    assert code == 2 and "no such file" in err
    assert call(capsys, "enumerate", "--polytope", "lobell:3", "--rank", "3")[0] == 2
    assert call(capsys, "enumerate", "--polytope", "cube", "--rank", "9")[0] == 2
    assert call(capsys, "betti", "--polytope", "cube")[0] == 2
    assert call(capsys, "construct", "--polytope", "cube", "--rank", "3",
                "--symmetry", "(1 3)")[0] == 2


def test_betti_json(capsys):
    code, out, _ = call(capsys, "betti", "--colouring", str(DATA / "hantzsche_wendt.mat"),
                        "--polytope", "cube", "--json")
    assert code == 0
    assert json.loads(out) == {"schema": 1, "betti": [1, 0, 0, 1]}


def test_symmetries_of_polytope(capsys):
    code, out, _ = call(capsys, "symmetries", "--polytope", "cube")
    assert code == 0
    assert len(out.splitlines()) == 48
    code, out, _ = call(capsys, "symmetries", "--polytope", "lobell:7", "--json")
    data = json.loads(out)
    assert data["order"] == 28 and len(data["automorphisms"]) == 28


def test_symmetries_of_colouring(capsys):
    code, out, _ = call(capsys, "symmetries", "--polytope", "lobell:7",
                        "--colouring", str(DATA / "z7.mat"), "--json")
    data = json.loads(out)
    assert data["group"] == "Z7" and data["order"] == 7
    assert {e["kind"] for e in data["elements"]} == {"identity", "face_rotation"}


def test_enumerate_formats_agree(capsys):
    args = ["enumerate", "--polytope", "cube", "--rank", "4", "--classify-sym", "--threads", "1"]
    _, text, _ = call(capsys, *args)
    _, js, _ = call(capsys, *args, "--json")
    _, table, _ = call(capsys, *args, "--out", "csv")
    data = json.loads(js)
    rows = list(csv.DictReader(io.StringIO(table)))
    assert data["schema"] == 1
    assert data["count"] == len(rows) == 6
    assert text.startswith("classes: 6")
    for row, rec in zip(rows, data["classes"]):
        assert row["matrix"] == rec["matrix"].replace("\n", "/")
        assert row["group"] == rec["group"]
    assert sum(data["histogram"].values()) == 6


def test_enumerate_qhs_cube(capsys):
    code, out, _ = call(capsys, "enumerate", "--polytope", "cube", "--rank", "4", "--qhs",
                        "--classify-sym", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["histogram"] == {"S3": 1}
    assert data["classes"][0]["betti"] == [1, 0, 0, 1]


def test_enumerate_empty_is_negative(capsys):
    code, out, _ = call(capsys, "enumerate", "--polytope", "cube", "--rank", "3", "--qhs")
    assert code == 1
    assert out.startswith("classes: 0")


def test_output_independent_of_threads(capsys, monkeypatch):
    args = ["enumerate", "--polytope", "dodecahedron", "--rank", "3", "--classify-sym", "--json"]
    outs = []
    for n in ("1", "3"):
        monkeypatch.setenv("QHS_LAB_THREADS", n)
        outs.append(call(capsys, *args)[1])
    assert outs[0] == outs[1]
    cfg = dict(subcommand="enumerate", polytope="cube", rank=4, out="csv")
    assert run(RunConfig(threads=1, **cfg)) == run(RunConfig(threads=2, **cfg))


def test_env_overrides_threads(monkeypatch, capsys):
    monkeypatch.setenv("QHS_LAB_THREADS", "zero")
    assert call(capsys, "symmetries", "--polytope", "cube")[0] == 2


def test_construct_z7(capsys):
    code, out, _ = call(capsys, "construct", "--polytope", "lobell:7", "--rank", "4",
                        "--symmetry", "face:1", "--seed", str(ROOT / "data" / "z7.seed"),
                        "--classify-sym")
    assert code == 0
    assert "raw_candidates=14" in out
    assert "classes: 1" in out and "group Z7" in out


def test_audit(tmp_path, capsys):
    code, out, _ = call(capsys, "audit", "--colouring", str(DATA / "z7.mat"))
    assert code == 0 and "audit: passed" in out
    simplex = tmp_path / "s.mat"
    simplex.write_text("polytope: simplex3\n1001\n0101\n0011\n")
    code, out, _ = call(capsys, "audit", "--colouring", str(simplex))
    assert code == 1 and "defect: reflection" in out
    code, out, _ = call(capsys, "audit", "--colouring", str(simplex), "--audit-soft")
    assert code == 0 and "warning: reflection" in out


def test_json_outputs_round_trip(capsys):
    runs = [
        ("check", "--colouring", str(DATA / "garrison_scott.mat"), "--polytope", "dodecahedron"),
        ("audit", "--colouring", str(DATA / "hantzsche_wendt.mat"), "--polytope", "cube"),
        ("symmetries", "--polytope", "simplex3"),
    ]
    for argv in runs:
        _, out, _ = call(capsys, *argv, "--json")
        data = json.loads(out)
        assert data["schema"] == 1
        assert json.dumps(data, indent=2, sort_keys=True) + "\n" == out


def test_parse_seed_and_symmetry():
    P = build_lobell(7)
    assert parse_seed("# c\n1 1000\n16 1000\n3 0010\n", P) == {1: 1, 16: 1, 3: 4}
    for bad in ("1 1000\n1 0100", "99 1000", "1 10a0", "x 1"):
        with pytest.raises(UsageError):
            parse_seed(bad, P)
    assert resolve_symmetry("face:1", P).order() == 7
    cube = build_cube()
    with pytest.raises(UsageError):
        resolve_symmetry("edge:1,2", cube)
    with pytest.raises(UsageError):
        resolve_symmetry("spin:1", cube)


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig(subcommand="plot")
    with pytest.raises(UsageError):
        RunConfig(subcommand="check", out="xml")
    with pytest.raises(UsageError):
        RunConfig(subcommand="check", threads=0)
