import io
import json
import subprocess
import sys

from selfnorm.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_census_a5():
    code, out, err = run("census", "A5")
    lines = out.splitlines()
    assert code == 0 and err == ""
    assert lines[0] == "order 60, D = 4"
    assert lines[1] == "order class_size normalizer_order"
    assert lines[2:] == ["2 15 4", "3 10 6", "4 5 12", "5 6 10"]


def test_census_recipe_expression():
    code, out, _ = run("census", "frobenius_metacyclic", "p=7", "n=1", "q=3", "m=1")
    assert code == 0
    assert out.startswith("order 21, D = 1\n")


def test_census_from_file(tmp_path):
    path = tmp_path / "cat.txt"
    path.write_text("group S3 degree 3\ngen (1 2)\ngen (1 2 3)\n")
    code, out, _ = run("census", "--file", str(path), "--name", "S3")
    assert code == 0 and out.startswith("order 6, D = 1\n")
    code, _, err = run("census", "--file", str(path), "--name", "S4")
    assert code == 2 and "no group named" in err


def test_usage_errors_exit_2():
    for argv in [(), ("bogus",), ("census",), ("census", "Nope"), ("verify", "--checks", "nonsense"), ("family", "frob2", "--grid", "p")]:
        code, out, err = run(*argv)
        assert code == 2, argv
        assert out == "" and err


def test_parse_error_exit_2(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("group X recipe cyclic n=3\nwhat\n")
    code, _, err = run("verify", "--catalog", str(path))
    assert code == 2 and "line 2" in err
    code, _, err = run("table", "--catalog", str(tmp_path / "missing.txt"))
    assert code == 2 and "cannot read" in err


def test_verify_exit_codes(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("group C4 recipe cyclic n=4\nexpect d=1\n")
    code, out, err = run("verify", "--catalog", str(good), "--checks", "expectations")
    assert code == 0
    assert out.splitlines()[1] == "expectations,C4:d,1,1,pass"
    assert "1 passed, 0 failed" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("group C4 recipe cyclic n=4\nexpect d=3\n")
    code, out, err = run("verify", "--catalog", str(bad), "--checks", "expectations")
    assert code == 1
    assert "0 passed, 1 failed" in err


def test_verify_json(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("group C4 recipe cyclic n=4\nexpect d=1 order=4\n")
    code, out, _ = run("verify", "--catalog", str(good), "--checks", "expectations", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["passed"] == 2


def test_family_frob2():
    code, out, _ = run("family", "frob2", "--grid", "p=5..13,q=2..5")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "lemma,p,q,n,m,case,order,formula,census,status"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 12
    assert all(r[7] == r[8] and r[9] == "pass" for r in rows)


def test_table_formats(tmp_path):
    path = tmp_path / "cat.txt"
    path.write_text("group S3 recipe dihedral n=3\n\ngroup A5 recipe preset name=A5\n")
    code, out, _ = run("table", "--catalog", str(path))
    assert code == 0
    assert out.splitlines() == [
        "name,order,d,subgroup_classes,subgroups,derived_length,nilpotency_class,center_order,bucket",
        "S3,6,1,4,6,2,,1,D1-frobenius-pq",
        "A5,60,4,9,59,,,1,D4-A5",
    ]
    code, out, _ = run("table", "--catalog", str(path), "--format", "json")
    rows = json.loads(out)["rows"]
    assert rows[1]["derived_length"] is None and rows[1]["d"] == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "selfnorm", "census", "C4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("order 4, D = 1\n")
