import json
import subprocess
import sys
from pathlib import Path

import pytest

from logfano import cli

INPUTS = Path(__file__).resolve().parent.parent / "inputs"
EX = INPUTS / "blowup_f1.json"


def run_main(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def ex_doc():
    return json.loads(EX.read_text())


def test_example_report(capsys):
    code, out, _ = run_main(capsys, EX)
    assert code == 0
    rep = json.loads(out)
    res = rep["results"][0]
    assert res["eta"]["value"] == "-5/6"
    assert res["eta"]["verdict"] == "NOT_LOG_K_SEMISTABLE"
    assert res["df"]["df_value"] == "-50/3"
    assert rep["profile"]["tau"] == "2"
    assert [p["poly"] for p in rep["eta_symbolic"]["pieces"]] == [["-4/3", "0", "2"]]
    (iv,) = rep["destabilizing_betas"]
    assert iv["lo"] == "0" and iv["hi"]["defining_poly"] == ["-2/3", "0", "1"]
    assert any("r" in c and "finite generation" in c for c in rep["caveats"])


def test_text_format(capsys):
    code, out, _ = run_main(capsys, EX, "--format", "text")
    assert code == 0
    assert "eta = -5/6" in out and "NOT_LOG_K_SEMISTABLE" in out


def test_beta_scan_override(capsys):
    code, out, _ = run_main(capsys, EX, "--beta-scan", "1/4:3/4:1/4", "--r", "auto")
    assert code == 0
    rep = json.loads(out)
    assert [r["beta"] for r in rep["results"]] == ["1/4", "1/2", "3/4"]
    assert [r["eta"]["value"] for r in rep["results"]] == ["-29/24", "-5/6", "-5/24"]


@pytest.mark.parametrize("mutate,needle", [
    (lambda d: d["surface"].__setitem__("gram", [["1", "2", "0"], ["1", "0", "0"], ["0", "0", "-1"]]), "symmetric"),
    (lambda d: d["surface"].__setitem__("boundary", ["0", "0", "0"]), "surface.boundary"),
    (lambda d: d.__setitem__("beta", "3/2"), "beta"),
    (lambda d: d.__setitem__("beta", "0.5"), "beta"),
    (lambda d: d["surface"].__setitem__("canonical", ["-2", "-1"]), "surface.canonical"),
])
def test_validation_diagnostics(tmp_path, capsys, mutate, needle):
    doc = ex_doc()
    mutate(doc)
    p = write(tmp_path, doc)
    code, out, _ = run_main(capsys, p, "--validate-only")
    assert code == 2
    assert needle in out
    code, _, err = run_main(capsys, p)
    assert code == 2 and needle in err


def test_all_diagnostics_reported(tmp_path, capsys):
    doc = ex_doc()
    doc["beta"] = "3/2"
    doc["surface"]["boundary"] = ["0", "0", "0"]
    code, out, _ = run_main(capsys, write(tmp_path, doc), "--validate-only")
    assert code == 2
    assert "beta" in out and "surface.boundary" in out


def test_valid_document_validates(capsys):
    code, out, _ = run_main(capsys, EX, "--validate-only")
    assert code == 0 and out == ""


def test_unreadable_input(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    code, _, err = run_main(capsys, p)
    assert code == 2 and "cannot read" in err


def test_bundle_degree_too_high_is_invalid(tmp_path, capsys):
    doc = {"bundle": {"n": 2, "segments": [
        {"lo": "0", "hi": "1", "vol": ["1", "0", "0", "-1"], "s": ["0", "0", "3/2"]}]},
        "beta": "1/2", "r": 2}
    code, _, err = run_main(capsys, write(tmp_path, doc))
    assert code == 2 and "degree" in err


def test_not_big_is_invalid(tmp_path, capsys):
    doc = {"surface": {"basis": ["H"], "gram": [["3"]], "canonical": ["-1"], "boundary": ["1"],
                       "negative_curves": []}, "beta": "0", "r": 1}
    code, _, err = run_main(capsys, write(tmp_path, doc))
    assert code == 2 and "beta = 0" in err


def test_computational_failure_exit_code(tmp_path, capsys):
    # an anti-effective boundary: the volume never reaches zero along the ray
    doc = {"surface": {"basis": ["H"], "gram": [["1"]], "canonical": ["-3"], "boundary": ["-1"],
                       "negative_curves": []}, "beta": "1/2", "r": 2}
    code, _, err = run_main(capsys, write(tmp_path, doc))
    assert code == 3 and "never vanishes" in err


def test_bundle_round_trip_matches(tmp_path, capsys):
    bpath = tmp_path / "bundle.json"
    code, out_s, _ = run_main(capsys, EX, "--emit-bundle", bpath)
    assert code == 0
    code, out_b, _ = run_main(capsys, bpath)
    assert code == 0
    rs, rb = json.loads(out_s)["results"][0], json.loads(out_b)["results"][0]
    assert cli.dumps(rs["eta"]) == cli.dumps(rb["eta"])
    assert cli.dumps(rs["df"]) == cli.dumps(rb["df"])


def test_bundle_rejects_auto_r(tmp_path, capsys):
    bpath = tmp_path / "bundle.json"
    run_main(capsys, EX, "--emit-bundle", bpath)
    doc = json.loads(bpath.read_text())
    doc["r"] = "auto"
    code, _, err = run_main(capsys, write(tmp_path, doc, "b2.json"))
    assert code == 2 and "r" in err


def test_toric_input(capsys):
    code, out, _ = run_main(capsys, INPUTS / "blowup_f1_toric.json")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"][0]["eta"]["value"] == "-5/6"
    (tb,) = rep["verification"]["toric"]
    assert tb["v0_fit"] == tb["v0_formula"] == "40/3"
    assert tb["v1_fit"] == tb["v1_formula"] == "15/2"


def test_projective_plane_input(capsys):
    code, out, _ = run_main(capsys, INPUTS / "p2_line.json")
    assert code == 0
    rep = json.loads(out)
    assert [r["eta"]["verdict"] for r in rep["results"]] == ["NOT_LOG_K_SEMISTABLE"] * 3


def test_deterministic_across_processes():
    cmd = [sys.executable, "-m", "logfano", str(EX)]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
