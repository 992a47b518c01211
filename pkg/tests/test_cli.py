import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from equivhom.cli import load_schema, main, run

SCENARIOS = Path(__file__).resolve().parent.parent / "docs" / "scenarios"
CASES = sorted(p.stem for p in SCENARIOS.glob("*.json"))


def run_capture(path, **kw):
    out, err = io.StringIO(), io.StringIO()
    code = run(str(path), out=out, err=err, **kw)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, obj, name="sc.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


@pytest.mark.parametrize("name", CASES)
def test_golden(name):
    code, out, _ = run_capture(SCENARIOS / f"{name}.json")
    assert code == 0
    assert out == (SCENARIOS / f"{name}.golden.txt").read_text()


@pytest.mark.parametrize("name", CASES)
def test_docs_scenarios_are_schema_valid(name):
    jsonschema.validate(json.loads((SCENARIOS / f"{name}.json").read_text()), load_schema())


def test_homology_table():
    code, out, _ = run_capture(SCENARIOS / "antipodal_s2_homology.json")
    lines = out.splitlines()
    assert lines[3].split()[:5] == ["k:", "0", "1", "2", "3"]
    assert lines[4].split()[:5] == ["dim:", "1", "1", "1", "0"]


def test_series_output_mentions_minus_one():
    code, out, _ = run_capture(SCENARIOS / "hyperbola_antipodal_series.json")
    assert code == 0 and "beta = -1 + O(u^17)" in out.splitlines()


def test_byte_identical_runs_in_subprocesses():
    path = SCENARIOS / "antipodal_s2_spectral.json"
    cmd = [sys.executable, "-m", "equivhom.cli", "run", str(path)]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_json_format_and_flags():
    code, out, _ = run_capture(SCENARIOS / "antipodal_s2_homology.json", fmt="json", cutoff=4, resolution="bar")
    data = json.loads(out)
    assert code == 0 and data["homology"] == data["cohomology"] == [1, 1, 1, 0, 0]
    assert data["resolution"] == "normalized bar"


def test_malformed_json_exit_2(tmp_path):
    code, _, err = run_capture(write(tmp_path, "{not json"))
    assert code == 2 and "malformed JSON" in err


def test_missing_file_exit_2(tmp_path):
    assert run_capture(tmp_path / "absent.json")[0] == 2


def test_schema_violation_exit_2(tmp_path):
    code, _, err = run_capture(write(tmp_path, {"command": "homology", "cutoff": "many"}))
    assert code == 2 and "schema violation" in err
    assert run_capture(write(tmp_path, {"command": "teleport"}))[0] == 2
    unknown_builder = {"command": "homology", "complex": {"builder": "torus"}}
    assert run_capture(write(tmp_path, unknown_builder))[0] == 2


def test_invalid_complex_exit_1(tmp_path):
    sc = {"command": "homology", "group": {"kind": "trivial"},
          "complex": {"cells": [1, 1, 1], "boundary": [[[0, 0]], [[0, 0]]]}}
    code, _, err = run_capture(write(tmp_path, sc))
    assert code == 1 and "invalid" in err


def test_non_homomorphism_exit_1(tmp_path):
    sc = {"command": "quotient", "group": {"kind": "cyclic", "n": 2},
          "action": {"dim": 1, "matrices": [[[2]]]}}
    assert run_capture(write(tmp_path, sc))[0] == 1


def test_failed_verification_exit_1(tmp_path):
    sc = {"command": "verify", "group": {"kind": "cyclic", "n": 2},
          "complex": {"cells": [2, 2], "boundary": [[[0, 0], [1, 1]]],
                      "action": [[[1, 0]], [[0, 1]]]}}
    code, out, _ = run_capture(write(tmp_path, sc))
    assert code == 1 and "CHECKS FAILED" in out


def test_main_schema_command(capsys):
    assert main(["schema"]) == 0
    assert json.loads(capsys.readouterr().out)["$schema"].startswith("https://json-schema.org/")
