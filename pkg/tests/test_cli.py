import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from natfull import instance_io as io
from natfull import report as rp
from natfull.cli import main
from natfull.errors import ParseError, ValidationError, WitnessViolation
from natfull.fixtures import CATALOG, build

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "fixtures"
SHIPPED = sorted(FIXTURE_DIR.glob("*.json"))


# -- loading ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_fixture_validates(path, capsys):
    assert main(["validate", str(path)]) == 0
    assert capsys.readouterr().out.startswith("VALID")


def test_truncated_file_is_parse_error(tmp_path):
    text = (FIXTURE_DIR / "fix_proj.json").read_text()
    bad = tmp_path / "cut.json"
    bad.write_text(text[: len(text) // 2])
    with pytest.raises(ParseError):
        io.load(str(bad))
    assert main(["validate", str(bad)]) == 2


def test_wrong_version_is_parse_error():
    with pytest.raises(ParseError):
        io.from_json({"version": "other", "p": 2})


def test_non_multiplicative_matrix_names_basis_pair(tmp_path, capsys):
    data = json.loads((FIXTURE_DIR / "fix_proj.json").read_text())
    data["morphisms"]["proj"]["matrix"] = [[1, 1]]
    with pytest.raises(ValidationError) as exc:
        io.from_json(data)
    msgs = exc.value.violations["morphisms.proj"]
    assert any("e0 e1" in m or "e1 e0" in m for m in msgs)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["validate", str(bad)]) == 1
    assert "morphisms.proj" in capsys.readouterr().err


@pytest.mark.parametrize("key", sorted(CATALOG))
def test_emitted_fixture_round_trips(key):
    inst = build(key, 3)
    again = io.loads(io.dumps(inst))
    assert io.dumps(again) == io.dumps(inst)


# -- fixtures command --------------------------------------------------------------------------------


def test_fixtures_list_has_seven_entries(capsys):
    assert main(["fixtures", "list"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 7


def test_fixtures_emit_triangular_p3(tmp_path):
    out = tmp_path / "tri3.json"
    assert main(["fixtures", "emit", "FIX-TRI", "--p", "3", "-o", str(out)]) == 0
    inst = io.load(str(out))
    assert inst.p == 3 and inst.algebras["R"].dim == 3


def test_fixtures_emit_sweedler_of(capsys):
    assert main(["fixtures", "emit", "FIX-SWE", "--of", "FIX-F4"]) == 0
    inst = io.loads(capsys.readouterr().out)
    assert inst.corings["sweedler"].dim == 4


def test_fixtures_unknown_key():
    assert main(["fixtures", "emit", "FIX-NOPE"]) == 2


# -- analyze and reports -----------------------------------------------------------------------------


def test_analyze_text_names_deciding_condition(capsys):
    assert main(["analyze", "scalars", "--morphism", str(FIXTURE_DIR / "fix_f4.json")]) == 0
    out = capsys.readouterr().out
    assert "restriction.naturally_full: NO" in out and "has dim 2" in out


def test_analyze_triangular_text(capsys):
    assert main(["analyze", "scalars", "--morphism", str(FIXTURE_DIR / "fix_tri.json")]) == 0
    out = capsys.readouterr().out
    assert "extension.full_on_family: YES" in out
    assert "extension.naturally_full: NO" in out and "infeasible" in out


@pytest.mark.parametrize(
    "args",
    [
        ["scalars", "--morphism", "fix_proj.json"],
        ["bimodule", "--bimodule", "fix_mat2.json", "--id", "M"],
        ["coring", "--coring", "fix_triv.json"],
        ["coring", "--coring", "fix_swe.json", "--id", "sweedler"],
        ["coring-morphism", "--input", "fix_swe.json"],
    ],
    ids=lambda a: "-".join(a[::2]),
)
def test_json_report_reverifies(args, tmp_path, capsys):
    args = list(args)
    args[2] = str(FIXTURE_DIR / args[2])
    out = tmp_path / "rep.json"
    assert main(["analyze", *args, "--format", "json", "--json", str(out)]) == 0
    printed = capsys.readouterr().out
    rep = json.loads(out.read_text())
    assert json.loads(printed)["verdicts"] == rep["verdicts"]
    assert list(rep) == sorted(rep)
    inst = io.load(args[2])
    section = {"scalars": "morphisms", "bimodule": "bimodules", "coring": "corings", "coring-morphism": "coring_morphisms"}[args[0]]
    key = args[4] if len(args) > 3 else None
    obj = inst.only(section, key)
    checked = rp.verify_witnesses(rep, obj)
    assert all(checked.values())
    true_functors = {k.split(".")[0] for k, v in rep["verdicts"].items() if k.endswith(".naturally_full") and v["value"]}
    assert true_functors <= {k.split(".")[0] for k in checked}


def test_tampered_witness_rejected():
    phi = build("FIX-PROJ").morphisms["proj"]
    rep = rp.scalars_report(phi)
    rep["witnesses"]["extension.E"] = [[0], [1]]
    with pytest.raises(WitnessViolation):
        rp.verify_witnesses(rep, phi)


def test_missing_witness_rejected():
    phi = build("FIX-PROJ").morphisms["proj"]
    rep = rp.scalars_report(phi)
    rep["witnesses"]["extension.E"] = None
    with pytest.raises(WitnessViolation):
        rp.verify_witnesses(rep, phi)


def test_ambiguous_id_is_error(capsys):
    assert main(["analyze", "coring", "--coring", str(FIXTURE_DIR / "fix_swe.json")]) == 2
    assert "--id" in capsys.readouterr().err


# -- suite -----------------------------------------------------------------------------------------


def test_suite_seed_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("NATFULL_SEED", "11")
    out = tmp_path / "s.json"
    assert main(["suite", "run", "--count", "2", "--json", str(out)]) == 0
    assert json.loads(out.read_text())["seed"] == 11
    assert "seed 11: 0 violation(s)" in capsys.readouterr().out


def test_module_entry_point():
    env = dict(os.environ)
    res = subprocess.run([sys.executable, "-m", "natfull", "fixtures", "list"], capture_output=True, text=True, env=env)
    assert res.returncode == 0 and "FIX-TRI" in res.stdout
