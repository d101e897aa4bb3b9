"""CLI contract: exit codes, determinism, fixture verification, per-command
behavior and the --jobs / --pretty / --field-degree flags."""

import json
from pathlib import Path

import pytest

from modlie.cli import main

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "modlie" / "fixtures"
ALGEBRAS = ["dim2.json", "dim3alpha.json", "dim4.json", "dim5.json",
            "fsl2.json", "fsl2_env.json", "sl2.json"]


def fx(name):
    return str(FIXTURES / name)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- exit code 0 / fixture invariants ----------------------------------------------

@pytest.mark.parametrize("name", ALGEBRAS)
def test_every_fixture_passes_verify(capsys, name):
    code, payload = run(capsys, ["verify", fx(name)])
    assert code == 0
    assert payload["result"]["jacobi"] is True


def test_verify_sl2_restricted(capsys):
    code, payload = run(capsys, ["verify", fx("sl2.json")])
    assert code == 0
    assert payload["result"]["restricted"] is True
    assert payload["result"]["pmap"]["ok"] is True


def test_verify_dim3alpha_not_restrictable(capsys):
    code, payload = run(capsys, ["verify", fx("dim3alpha.json")])
    assert code == 0
    assert payload["result"]["restricted"] is False
    assert payload["result"]["restrictable"] is False


def test_report_shape_and_digests(capsys):
    code, payload = run(capsys, ["verify", fx("dim2.json")])
    assert set(payload) == {"command", "inputs", "result", "diagnostics"}
    assert payload["command"] == "verify"
    digest = payload["inputs"][fx("dim2.json")]
    assert len(digest) == 64 and int(digest, 16) >= 0


# -- exit code 2: malformed input ----------------------------------------------------

def test_truncated_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "trunc.json"
    bad.write_text(fx and (FIXTURES / "dim2.json").read_text()[:40])
    code, payload = run(capsys, ["verify", str(bad)])
    assert code == 2
    assert payload["diagnostics"][0]["error"] == "JSONDecodeError"


def test_missing_file_exits_2(capsys):
    code, payload = run(capsys, ["verify", "/nonexistent/file.json"])
    assert code == 2


def test_bad_coefficient_exits_2(tmp_path, capsys):
    spec = json.loads((FIXTURES / "dim2.json").read_text())
    spec["brackets"]["h|x"]["x"] = "1,1"  # two digits in a degree-1 field
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(spec))
    code, payload = run(capsys, ["verify", str(path)])
    assert code == 2
    assert payload["diagnostics"][0]["error"] == "DegreeMismatch"


def test_wrong_vector_length_exits_2(capsys):
    code, payload = run(capsys, ["jcd", fx("dim2.json"), "--element", "1"])
    assert code == 2
    assert payload["diagnostics"][0]["error"] == "ShapeMismatch"


# -- exit code 1: mathematical failure --------------------------------------------------

def test_bad_pmap_exits_1(tmp_path, capsys):
    spec = json.loads((FIXTURES / "dim2.json").read_text())
    spec["pmap"]["h"] = {"x": "1"}  # h^[3] := x violates axiom 1
    path = tmp_path / "badpmap.json"
    path.write_text(json.dumps(spec))
    code, payload = run(capsys, ["verify", str(path)])
    assert code == 1
    assert payload["result"]["pmap"]["ok"] is False
    assert payload["diagnostics"][0]["error"] == "MathFailure"


def test_needs_extension_exits_1(tmp_path, capsys):
    S = tmp_path / "Sh1.json"
    S.write_text(json.dumps({"values": {"h": "1"}}))
    code, payload = run(capsys, ["classify", fx("dim2.json"),
                                 "--character", str(S), "--family", "dim2"])
    assert code == 1
    assert payload["diagnostics"][0]["error"] == "NeedsExtension"
    # rerunning with --field-degree 3 solves X^3 - X = 1 over GF(27)
    code, payload = run(capsys, ["classify", fx("dim2.json"),
                                 "--character", str(S), "--family", "dim2",
                                 "--field-degree", "3"])
    assert code == 0
    assert payload["result"]["count"] == 3


# -- exit code 3: unsupported ------------------------------------------------------------

def test_penv_dim4_exits_3(capsys):
    code, payload = run(capsys, ["penv", fx("dim4.json")])
    assert code == 3
    assert payload["diagnostics"][0]["error"] == "NonTrivialCenter"


# -- per-command behavior ------------------------------------------------------------------

def test_penv_dim3alpha(capsys):
    code, payload = run(capsys, ["penv", fx("dim3alpha.json")])
    assert code == 0
    r = payload["result"]
    assert r["dim"] == 4 and r["basis"] == ["h", "x", "y", "t1"]
    assert r["pmap"]["h"] == {"t1": "1,0"}


def test_env_dimension_law(capsys):
    code, payload = run(capsys, ["env", fx("dim2.json"),
                                 "--character", fx("Sx1.json"), "--dim"])
    assert code == 0
    assert payload["result"]["dim"] == 9  # p^n = 3^2


def test_env_mul(capsys):
    code, payload = run(capsys, ["env", fx("sl2.json"), "--mul",
                                 "1*e^(1,0,0)", "1*e^(0,1,0)"])
    assert code == 0
    assert payload["result"]["product"] == "1*e^(1,1,0)"


def test_jcd_toral_element(capsys):
    # [PAPER: (h+x)^[3] = h+x, so h+x is toral]
    code, payload = run(capsys, ["jcd", fx("dim2.json"), "--element", "1;1"])
    assert code == 0
    r = payload["result"]
    assert r["class"] == "toral"
    assert r["semisimple_part"] == "1;1" and r["nilpotent_part"] == "0;0"


def test_induce_dimension(tmp_path, capsys):
    mod = tmp_path / "M.json"
    # the span Fx becomes a 1-dim subalgebra with generated label "g1"
    mod.write_text(json.dumps({"dim": 1, "action": {"g1": [["1"]]}}))
    code, payload = run(capsys, ["induce", fx("dim2.json"),
                                 "--character", fx("Sx1.json"),
                                 "--module", str(mod), "--span", "0;1"])
    assert code == 0
    r = payload["result"]
    assert r["dim"] == 3 and r["subalgebra_dim"] == 1 and r["module_dim"] == 1


def test_classify_sl2_zero_character(capsys):
    code, payload = run(capsys, ["classify", fx("sl2.json"),
                                 "--character", fx("S0.json"), "--family", "sl2"])
    assert code == 0
    r = payload["result"]
    assert r["count"] == 3
    assert sorted(c["dim"] for c in r["classes"]) == [1, 2, 3]


def test_classify_dim3alpha_envelope(tmp_path, capsys):
    S = tmp_path / "St.json"
    S.write_text(json.dumps({"values": {"t1": "0,1"}}))
    code, payload = run(capsys, ["classify", fx("dim3alpha.json"),
                                 "--character", str(S), "--family", "dim3alpha"])
    assert code == 0
    r = payload["result"]
    assert r["case"] == "(b.1)" and r["count"] == 3


def test_oracle_dim2(capsys):
    code, payload = run(capsys, ["oracle", fx("dim2.json"),
                                 "--character", fx("Sx1.json")])
    assert code == 0
    r = payload["result"]
    assert r["count"] == 1 and r["classes"][0]["dim"] == 3


def test_restrictable_reports_pmap(capsys):
    code, payload = run(capsys, ["restrictable", fx("sl2.json")])
    assert code == 0
    assert payload["result"]["restrictable"] is True
    assert payload["result"]["pmap"]["h"] == {"h": "1"}
    code, payload = run(capsys, ["restrictable", fx("fsl2.json")])
    assert code == 0
    assert payload["result"] == {"restrictable": False, "pmap": None}


# -- determinism / output modes ---------------------------------------------------------------

def test_byte_identical_reruns(tmp_path, capsys):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        code = main(["classify", fx("sl2.json"), "--character", fx("S0.json"),
                     "--family", "sl2", "-o", str(out)])
        assert code == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_pretty_renders_table(capsys):
    code = main(["classify", fx("sl2.json"), "--character", fx("S0.json"),
                 "--family", "sl2", "--pretty"])
    assert code == 0
    out = capsys.readouterr().out
    assert "dim  label" in out and "case=" in out and "count=3" in out


def test_sweep_with_jobs_preserves_order(tmp_path, capsys):
    sweep = tmp_path / "sweep.json"
    sweep.write_text(json.dumps([{"values": {}}, {"values": {"x": "1"}}]))
    codes = {}
    for jobs in ("1", "3"):
        code, payload = run(capsys, ["classify", fx("dim2.json"),
                                     "--characters", str(sweep),
                                     "--family", "dim2", "--jobs", jobs])
        assert code == 0
        reports = payload["result"]["reports"]
        assert [r["case"] for r in reports] == ["(a)", "(b)"]
        assert [r["count"] for r in reports] == [3, 1]
        codes[jobs] = json.dumps(payload, sort_keys=True)
    assert codes["1"] == codes["3"]


def test_classify_requires_character(capsys):
    with pytest.raises(SystemExit):
        main(["classify", fx("dim2.json"), "--family", "dim2"])


def test_field_degree_override(capsys):
    code, payload = run(capsys, ["verify", fx("dim2.json"),
                                 "--field-degree", "2"])
    assert code == 0
    assert payload["result"]["field_degree"] == 2
