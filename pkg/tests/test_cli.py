import json
import subprocess
import sys

import pytest

from conftest import CORPUS
from quiveralg.cli import main
from quiveralg.textformat import load


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_text(capsys):
    code, out, _ = run(capsys, "check", CORPUS / "quaternion.quiv")
    assert code == 0
    assert "dimension: 8" in out
    assert "symmetric: yes" in out
    assert "period(S_1) = 4" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", CORPUS / "quaternion_2A_k2.quiv", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["dimension"] == 20 and data["cartan"] == [[8, 4], [4, 4]]
    assert [p["period"] for p in data["periods"]] == [4, 4]
    assert data["symmetric"]


def test_check_needs_relations(capsys):
    code, _, err = run(capsys, "check", CORPUS / "two_loops_quiver.quiv")
    assert code == 2 and "no relations" in err


def test_screen_exit_codes(capsys):
    assert run(capsys, "screen", CORPUS / "quaternion.quiv")[0] == 0
    code, out, _ = run(capsys, "screen", CORPUS / "triangle_mixed.quiv")
    assert code == 1
    assert "TRIANGLE_RN" in out and "obstruction found" in out


def test_screen_json(capsys):
    code, out, _ = run(capsys, "screen", CORPUS / "nakayama2.quiv", "--json")
    data = json.loads(out)
    assert code == 1
    assert {c["id"]: c["status"] for c in data["checks"]}["L21"] == "fail"


def test_enumerate_table_and_files(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--vertices", 2, "--filters", "lemma21,lemma22", "--out", tmp_path)
    assert code == 0
    assert "generated" in out and "after lemma21" in out
    files = sorted(tmp_path.glob("*.quiv"))
    assert [f.name for f in files] == [f"n2_{k:04d}.quiv" for k in range(4)]
    for f in files:
        assert not load(f).has_relations


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--vertices", 1, "--json")
    data = json.loads(out)
    assert code == 0 and sorted(len(q["arrows"]) for q in data) == [1, 2]


def test_enumerate_bad_filter(capsys):
    code, _, err = run(capsys, "enumerate", "--vertices", 2, "--filters", "bogus")
    assert code == 2 and "unknown filter" in err


def test_sequence(capsys):
    code, out, _ = run(capsys, "sequence", CORPUS / "quaternion.quiv", "--vertex", "1")
    assert code == 0
    assert "verified: yes" in out
    code, out, _ = run(capsys, "sequence", CORPUS / "quaternion.quiv", "--vertex", "1", "--json")
    data = json.loads(out)
    assert data["verified"] and data["norm_p_hat"] == 16 and data["norm_p"] == 8
    assert data["arrow_adjustments"] == {"x": "-x"}


def test_sequence_errors(capsys):
    code, _, err = run(capsys, "sequence", CORPUS / "nakayama2.quiv", "--vertex", "1")
    assert code == 2 and "period" in err.lower()
    code, _, err = run(capsys, "sequence", CORPUS / "quaternion.quiv", "--vertex", "9")
    assert code == 2 and "unknown vertex" in err


def test_format_error_reported_with_position(capsys, tmp_path):
    bad = tmp_path / "bad.quiv"
    bad.write_text("vertices: 1\narrow x: 1 -> 1\nrelation: x*q\n")
    code, _, err = run(capsys, "screen", bad)
    assert code == 2 and "line 3" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "nope.quiv")
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "quiveralg", "check", str(CORPUS / "dual_numbers.quiv"), "--json"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert json.loads(r.stdout)["periods"][0]["period"] == 1


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
