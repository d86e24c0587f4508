import json
import subprocess
import sys

import pytest

from atrails.cli import main
from atrails.harness import figure_eight_document
from atrails.io import save


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fig8(tmp_path):
    path = tmp_path / "fig8.json"
    path.write_text(save(figure_eight_document()))
    return str(path)


def test_gen_tri(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, _, _ = run(capsys, "gen", "tri", "--v", "81", "--r", "9", "--m", "6", "--system", "construct",
                     "-o", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 81 and "atrail" in data["transition_systems"]
    assert run(capsys, "classify", str(out), "--system", "atrail")[1].strip() == "Unknot"


def test_gen_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "rect", "--i", "2", "--j", "3")
    assert code == 0 and json.loads(out)["genus"] == 1


def test_gen_bad_params(capsys):
    code, _, err = run(capsys, "gen", "rect", "--i", "1", "--j", "4")
    assert code == 2 and err.startswith("error\tBadParams\t")
    code, _, err = run(capsys, "gen", "tri", "--v", "9")
    assert code == 2 and "--r" in err


def test_classify_diagonal_and_shifted(capsys, tmp_path):
    r = tmp_path / "r.json"
    run(capsys, "gen", "rect", "--i", "7", "--j", "4", "--system", "diagonal", "-o", str(r))
    assert run(capsys, "classify", str(r), "--system", "diagonal")[1].strip() == "TorusKnot(7,4)"
    s = tmp_path / "s.json"
    run(capsys, "gen", "rect", "--i", "9", "--j", "8", "--shift", "5", "4", "-o", str(s))
    assert run(capsys, "classify", str(s), "--system", "shifted")[1].strip() == "TorusKnot(5,4)"
    code, _, err = run(capsys, "classify", str(s), "--system", "nope")
    assert code == 2 and "shifted" in err


def test_search_exit_codes(capsys, tmp_path):
    t1, t2 = tmp_path / "t1.json", tmp_path / "t2.json"
    run(capsys, "gen", "tri", "--v", "5", "--r", "1", "--m", "1", "-o", str(t1))
    run(capsys, "gen", "tri", "--v", "5", "--r", "1", "--m", "2", "-o", str(t2))
    code, out, _ = run(capsys, "search", str(t1))
    assert code == 3 and out.strip() == "NONE"
    code, out, _ = run(capsys, "search", str(t2))
    assert code == 0 and out.startswith("witness\t0\t") and out.strip().endswith("Unknot")
    code, out, _ = run(capsys, "search", str(t2), "--all", "--mode", "exhaustive")
    assert code == 0 and len(out.splitlines()) == 10
    code, _, err = run(capsys, "search", str(t2), "--all", "--budget", "4")
    assert code == 4 and "BudgetExceeded" in err


def test_search_output_stable_across_workers(capsys, tmp_path):
    r = tmp_path / "r.json"
    run(capsys, "gen", "rect", "--i", "3", "--j", "3", "-o", str(r))
    one = run(capsys, "search", str(r), "--all", "--mode", "exhaustive", "--workers", "1")[1]
    two = run(capsys, "search", str(r), "--all", "--mode", "exhaustive", "--workers", "2")[1]
    assert one == two and len(one.splitlines()) == 216


def test_search_writes_witnesses(capsys, tmp_path):
    t, out = tmp_path / "t.json", tmp_path / "w.json"
    run(capsys, "gen", "tri", "--v", "9", "--r", "3", "--m", "1", "-o", str(t))
    assert run(capsys, "search", str(t), "-o", str(out))[0] == 0
    assert "atrail0" in json.loads(out.read_text())["transition_systems"]


def test_color(capsys, tmp_path):
    t = tmp_path / "t.json"
    run(capsys, "gen", "tri", "--v", "8", "--r", "2", "--m", "1", "-o", str(t))
    code, out, err = run(capsys, "color", str(t))
    assert code == 0 and err.strip() == "NoATrail"
    assert json.loads(out)["face_colors"].count("red") == 8
    r = tmp_path / "r.json"
    run(capsys, "gen", "rect", "--i", "3", "--j", "4", "-o", str(r))
    code, out, _ = run(capsys, "color", str(r))
    assert code == 3 and out.startswith("not-colorable\t")


def test_composite_certify(capsys, tmp_path, fig8):
    c = tmp_path / "c.json"
    code, _, _ = run(capsys, "gen", "composite", "--grid", "rect:3,5", "--grid", "rect:4,4", "--system",
                     "construct", "-o", str(c))
    assert code == 0
    code, out, _ = run(capsys, "certify", str(c), "--system", "atrail")
    assert code == 0 and out.strip() == "CertifiedUnknot"
    code, out, _ = run(capsys, "certify", fig8, "--system", "atrail")
    assert code == 3 and out.startswith("NotCertified")
    code, out, _ = run(capsys, "classify", fig8, "--system", "atrail")
    assert code == 0 and out.startswith("Unclassified(")


def test_triangular_composite(capsys, tmp_path):
    ok = tmp_path / "ok.json"
    code, _, _ = run(capsys, "gen", "composite", "--grid", "tri:9,3,1", "--grid", "tri:9,3,1", "--system",
                     "construct", "-o", str(ok))
    assert code == 0
    assert run(capsys, "certify", str(ok), "--system", "atrail")[0] == 0
    code, _, err = run(capsys, "gen", "composite", "--grid", "tri:9,3,1", "--grid", "tri:8,2,1", "--system",
                       "construct")
    assert code == 3


def test_glue_documents(capsys, tmp_path):
    r = tmp_path / "r.json"
    run(capsys, "gen", "rect", "--i", "4", "--j", "4", "--system", "construct", "-o", str(r))
    g = tmp_path / "g.json"
    assert run(capsys, "glue", str(r), str(r), "--system", "atrail", "-o", str(g))[0] == 0
    assert run(capsys, "certify", str(g), "--system", "atrail")[0] == 0
    plain = tmp_path / "p.json"
    assert run(capsys, "glue", str(r), str(r), "-o", str(plain))[0] == 0
    assert json.loads(plain.read_text())["genus"] == 2
    code, _, err = run(capsys, "glue", str(r), str(r), "--faces", "0,0", "--faces", "1,1")
    assert code == 2


def test_render(capsys, tmp_path, fig8):
    r = tmp_path / "r.json"
    run(capsys, "gen", "rect", "--i", "7", "--j", "4", "--system", "diagonal", "-o", str(r))
    code, out, _ = run(capsys, "render", str(r), "--system", "diagonal")
    assert code == 0 and "<svg" in out
    svg = tmp_path / "f.svg"
    assert run(capsys, "render", fig8, "--system", "atrail", "-o", str(svg))[0] == 0
    assert "component 1" in svg.read_text()


def test_invalid_document(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert run(capsys, "classify", str(bad), "--system", "x")[0] == 2
    assert run(capsys, "classify", str(tmp_path / "missing.json"), "--system", "x")[0] == 2


def test_verify_theorems_subset(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-theorems", "--only", "sah-exception", "--only", "shifted",
                       "--figures", str(tmp_path / "figs"))
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0] == ["suite", "status", "seconds", "detail"]
    assert [r[:2] for r in rows[1:]] == [["sah-exception", "pass"], ["shifted", "pass"]]
    figs = sorted(p.name for p in (tmp_path / "figs").iterdir())
    assert "report.tsv" in figs and "rect_7_4_diagonal.svg" in figs and len(figs) == 7


def test_verify_theorems_fault_and_budget(capsys):
    code, out, _ = run(capsys, "verify-theorems", "--only", "structural", "--inject-fault", "decoration")
    assert code == 1 and "FAIL\t" in out and "face-homology" in out
    code, _, err = run(capsys, "verify-theorems", "--max-v", "40")
    assert code == 4 and "BudgetExceeded" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "atrails", "gen", "rect", "--i", "1", "--j", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "BadParams" in proc.stderr
