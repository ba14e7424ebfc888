from __future__ import annotations

import json

import pytest

from toricfano import analyze
from toricfano.cli import main
from toricfano.errors import InvariantError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("cli")


def test_reflexive(capsys, workdir):
    code, out, _ = run(capsys, "reflexive", "--dim", "2", "--out", str(workdir / "r2.txt"))
    assert code == 0 and "16 reflexive" in out
    assert (workdir / "r2.txt").read_text().count("# key:") == 16
    code, out, _ = run(capsys, "reflexive", "--dim", "1", "--out", str(workdir / "r1.txt"))
    assert code == 0 and (workdir / "r1.txt").read_text().count("# key:") == 1


def test_reflexive_dim3_is_usage_error(capsys, workdir):
    code, _, err = run(capsys, "reflexive", "--dim", "3", "--out", str(workdir / "r3.txt"))
    assert code == 1 and "--reflexive-db" in err


def test_classify_and_manifest(capsys, workdir):
    out_path = workdir / "c2.txt"
    code, out, _ = run(capsys, "classify", "--dim", "2", "--out", str(out_path), "--jobs", "1")
    assert code == 0
    assert "admissible inputs     1" in out and "unique classes        5" in out
    manifest = json.loads((workdir / "c2.txt.manifest.json").read_text())
    assert manifest["output"]["classes"] == 5
    assert manifest["workers"] == 1
    assert {"command", "inputs", "wall_time_s", "version", "timestamp"} <= set(manifest)


def test_classify_from_database(capsys, workdir):
    db = workdir / "r2.txt"
    if not db.exists():
        main(["reflexive", "--dim", "2", "--out", str(db)])
    code, out, _ = run(capsys, "classify", "--dim", "3", "--reflexive-db", str(db),
                       "--out", str(workdir / "c3db.txt"), "--jobs", "1")
    assert code == 0 and "unique classes        18" in out
    manifest = json.loads((workdir / "c3db.txt.manifest.json").read_text())
    assert str(db) in manifest["inputs"]


def test_classify_errors(capsys, workdir):
    code, _, err = run(capsys, "classify", "--dim", "4", "--out", str(workdir / "x.txt"))
    assert code == 1 and "--reflexive-db" in err
    code, _, err = run(capsys, "classify", "--dim", "3", "--reflexive-db", str(workdir / "missing.txt"),
                       "--out", str(workdir / "x.txt"))
    assert code == 1
    wrong = workdir / "wrongdim.txt"
    wrong.write_text("1 2\n-1\n1\n")
    code, _, err = run(capsys, "classify", "--dim", "3", "--reflexive-db", str(wrong),
                       "--out", str(workdir / "x.txt"))
    assert code == 1 and "dimension" in err
    code, _, _ = run(capsys, "classify", "--out", "x.txt")
    assert code == 1


def test_transposed_database(capsys, workdir):
    db = workdir / "seg_t.txt"
    db.write_text("1 2\n-1 1\n")
    code, out, _ = run(capsys, "classify", "--dim", "2", "--reflexive-db", str(db), "--transpose",
                       "--out", str(workdir / "c2t.txt"), "--jobs", "1")
    assert code == 0 and "unique classes        5" in out


def test_jobs_do_not_change_output(capsys, workdir):
    a, b = workdir / "j1.txt", workdir / "j3.txt"
    assert run(capsys, "classify", "--dim", "3", "--out", str(a), "--jobs", "1")[0] == 0
    assert run(capsys, "classify", "--dim", "3", "--out", str(b), "--jobs", "3")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_jobs_from_environment(capsys, workdir, monkeypatch):
    monkeypatch.setenv("FANO_JOBS", "2")
    run(capsys, "classify", "--dim", "2", "--out", str(workdir / "env.txt"))
    assert json.loads((workdir / "env.txt.manifest.json").read_text())["workers"] == 2


def test_oracle_diff_stats_verify(capsys, workdir):
    c3 = workdir / "c3.txt"
    o3 = workdir / "o3.txt"
    assert run(capsys, "classify", "--dim", "3", "--out", str(c3), "--jobs", "1")[0] == 0
    code, out, _ = run(capsys, "oracle", "--dim", "3", "--out", str(o3), "--jobs", "1")
    assert code == 0 and "18 classes" in out
    code, out, _ = run(capsys, "diff", str(c3), str(o3))
    assert code == 0 and "18 common" in out

    code, out, _ = run(capsys, "verify", str(c3))
    assert code == 0 and "fail     0" in out and "FAIL" not in out

    csv_path = workdir / "c3.csv"
    code, out, _ = run(capsys, "stats", str(c3), "--csv", str(csv_path))
    assert code == 0 and "max picard       5 (2 class(es))" in out
    assert csv_path.read_text().splitlines()[0] == "key,dim,vertices,facets,picard,degree,h0,max_edge,index,ewald"


def test_stats_csv_row_for_p2(capsys, workdir):
    c2 = workdir / "c2s.txt"
    main(["classify", "--dim", "2", "--out", str(c2), "--jobs", "1"])
    capsys.readouterr()
    code, out, _ = run(capsys, "stats", str(c2), "--csv", "-")
    assert code == 0
    assert "2 3 1 0 -1;0 1 -1,2,3,3,1,9,10,3,3,True" in out.splitlines()


def test_diff_reports_differences(capsys, workdir):
    a = workdir / "da.txt"
    b = workdir / "db.txt"
    a.write_text("2 3\n1 0\n0 1\n-1 -1\n")
    b.write_text("2 4\n1 0\n0 1\n-1 0\n0 -1\n")
    code, out, _ = run(capsys, "diff", str(a), str(b))
    assert code == 1
    assert out.count("<") == 1 and out.count(">") == 1


def test_normal_form_command(capsys, workdir):
    f = workdir / "nf.txt"
    f.write_text("2 3\n1 0\n0 1\n-1 -1\n\n2 3\n1 1\n0 1\n-1 -2\n")
    code, out, _ = run(capsys, "normal-form", str(f))
    assert code == 0
    assert out.splitlines() == ["2 3 1 0 -1;0 1 -1"] * 2


def test_parse_error_exit_code(capsys, workdir):
    f = workdir / "bad.txt"
    f.write_text("2 3\n1 0\n0 1 1\n-1 -1\n")
    code, _, err = run(capsys, "verify", str(f))
    assert code == 1 and "line 3" in err


def test_verify_failure_exit_code(capsys, workdir, monkeypatch):
    def broken(p, idx):
        raise InvariantError("synthetic")

    monkeypatch.setattr(analyze, "project_along_vertex", broken)
    f = workdir / "hex.txt"
    f.write_text("2 6\n-1 -1\n-1 0\n0 -1\n0 1\n1 0\n1 1\n")
    code, out, _ = run(capsys, "verify", str(f))
    assert code == 2 and "FAIL projection" in out
