import json

import jsonschema
import pytest

from cralg import cli
from cralg.suite import REPORT_SCHEMA

SPHERE = "surface n=1 k=1\nweight z1=1 w1=2\nImw1 = z1*zb1\n"
QUARTIC = "surface n=1 k=1\nweight z1=1 w1=4\nImw1 = z1^2*zb1^2\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in (("sphere", SPHERE), ("quartic", QUARTIC), ("bad", "surface n=1 k=1\nImw1 = z1*(\n")):
        p = tmp_path / f"{name}.srf"
        p.write_text(text)
        paths[name] = str(p)
    alg = tmp_path / "dual.alg"
    alg.write_text("algebra dual dim=2\nbasis 1 n\nn * n = 0\n")
    paths["dual"] = str(alg)
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_validate(capsys, files):
    code, out, _ = run(capsys, "algebra", "validate", files["dual"])
    assert code == 0 and "nilpotent basis elements: n" in out
    code, out, _ = run(capsys, "algebra", "validate", "truncated_poly:3", "--json")
    data = json.loads(out)
    assert data["valid"] and data["algebra"]["dim"] == 3


def test_surface_validate(capsys, files):
    code, out, _ = run(capsys, "surface", "validate", files["quartic"], "--json")
    d = json.loads(out)["diagnostics"]
    assert code == 0
    assert d["fd"] == "holds" and d["finite_type_linear"]


def test_algebraize_command(capsys, files):
    code, out, _ = run(capsys, "algebraize", files["sphere"], "--algebra", "dual", "--json")
    eqs = json.loads(out)["surface"]["equations"]
    assert [e["rhs"] for e in eqs] == ["z1_1*zb1_1", "z1_1*zb1_2 + z1_2*zb1_1"]


def test_aut_command(capsys, files):
    code, out, _ = run(capsys, "aut", files["sphere"], "--json")
    data = json.loads(out)
    assert code == 0 and data["total_dim"] == 8
    assert {w["weight"]: w["dim"] for w in data["weights"] if w["dim"]} == {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1}
    code, out, _ = run(capsys, "aut", files["quartic"], "--algebra", files["dual"], "--max-weight", "0")
    assert "[S]" in out and "weights searched: -4..0" in out


def test_s_report_command(capsys, files):
    code, out, _ = run(capsys, "s-report", files["quartic"], "--algebra", "dual", "--json")
    rows = {r["weight"]: r for r in json.loads(out)["rows"]}
    assert rows[0]["full_dim"] == 5 and rows[0]["s_dim"] == 4 and not rows[0]["exhausted"]
    assert rows[4]["exhausted"]


def test_flow_command(capsys, files):
    code, out, _ = run(capsys, "flow", files["sphere"], "--field", "0", "--order", "3")
    assert code == 0 and "tangent through t^3: yes" in out
    code, out, _ = run(capsys, "flow", files["quartic"], "--field", "0", "--algebra", "dual", "--order", "2", "--json")
    assert json.loads(out)["algebra_holomorphic"] is True


def test_output_is_deterministic(capsys, files):
    a = run(capsys, "aut", files["quartic"], "--algebra", "dual", "--json")
    b = run(capsys, "aut", files["quartic"], "--algebra", "dual", "--json")
    assert a == b
    assert run(capsys, "aut", files["sphere"]) == run(capsys, "aut", files["sphere"])


@pytest.mark.parametrize(
    "argv,code",
    [
        (["surface", "validate", "BAD"], "SyntaxError"),
        (["surface", "validate", "/nonexistent.srf"], "IOError"),
        (["algebra", "validate", "quaternions_bad_preset_path"], "IOError"),
        (["aut", "SPHERE", "--algebra", "truncated_poly:0"], "InvalidParam"),
        (["flow", "SPHERE", "--field", "99"], "InvalidParam"),
        (["aut"], "UsageError"),
        (["nonsense"], "UsageError"),
    ],
)
def test_errors_are_single_line(capsys, files, argv, code):
    argv = [files["bad"] if a == "BAD" else files["sphere"] if a == "SPHERE" else a for a in argv]
    rc, out, err = run(capsys, *argv)
    assert rc == 2 and out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith(f"error: {code}: ")


def test_syntax_error_location(capsys, files):
    _, _, err = run(capsys, "surface", "validate", files["bad"])
    assert "(line 2, column 11)" in err


def test_seed_from_environment(capsys, files, monkeypatch):
    monkeypatch.setenv("CRALG_SEED", "17")
    assert run(capsys, "surface", "validate", files["quartic"])[0] == 0
    monkeypatch.setenv("CRALG_SEED", "x")
    rc, _, err = run(capsys, "surface", "validate", files["quartic"])
    assert rc == 2 and "InvalidParam" in err


def test_paper_suite_command(capsys, monkeypatch, suite_report):
    monkeypatch.setattr(cli, "run_suite", lambda max_weight=None: suite_report)
    code, out, _ = run(capsys, "paper-suite")
    assert code == 0
    assert "sphere aut total dimension: 8 = 8" in out
    code, out, _ = run(capsys, "paper-suite", "--json")
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)
