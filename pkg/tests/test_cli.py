import json
import subprocess
import sys

import jsonschema
import pytest

from cayrep.cli import load_schema, main

SCHEMA = load_schema()


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc, out


def test_reps_involutions(capsys):
    code, doc, _ = run_cli(capsys, "reps", "--group", "alt:5",
                           "--connection", '{"named": "involutions"}')
    assert code == 0
    assert doc["b"] == 1
    assert doc["classes"][0]["equivalent_to_input"]


def test_non_normal_connection(capsys):
    code, doc, _ = run_cli(capsys, "reps", "--group", "sym:5",
                           "--connection", '{"elements": ["(1 2)"]}')
    assert code == 1
    assert doc["error"] == "connection set not normal"


@pytest.mark.parametrize("argv", [
    ["reps", "--group", "sym5", "--connection", '{"named": "odd"}'],
    ["autgroup", "--group", "sym:5", "--connection", "{oops"],
    ["reps", "--group", "alt:5", "--connection", '{"elements": ["()"]}'],
])
def test_input_errors(capsys, argv):
    code, doc, _ = run_cli(capsys, *argv)
    assert code == 1 and doc["kind"] == "error"


def test_wreath_order_certificate(capsys):
    code, doc, _ = run_cli(capsys, "autgroup", "--group", "sym:5",
                           "--connection", '{"named": "odd"}')
    assert code == 0
    assert doc["order"]["wreath"]["cell"] == "60!"
    assert doc["type"] == "SymmetricType"


def test_budget_exit(capsys):
    code, doc, _ = run_cli(capsys, "--time-limit", "0.05", "reps", "--group", "sym:5",
                           "--connection", '{"named": "transpositions"}')
    assert code == 2
    assert doc["exact"] is False


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("CAYREP_ELEMENT_CAP", "50")
    code, doc, _ = run_cli(capsys, "group", "info", "--group", "alt:5")
    assert code == 2


def test_group_info(capsys):
    code, doc, _ = run_cli(capsys, "group", "info", "--group", "psl2:7")
    assert code == 0
    assert doc["order"] == 168 and doc["aut_order"] == 336


def test_identical_runs_identical_bytes(capsys):
    argv = ["reps", "--group", "sym:5", "--connection", '{"named": "transpositions"}']
    _, _, first = run_cli(capsys, *argv)
    _, _, second = run_cli(capsys, "--threads", "4", *argv)
    assert first == second


def test_schema_flag(capsys):
    assert main(["--json-schema"]) == 0
    assert json.loads(capsys.readouterr().out) == SCHEMA


def test_verify_property_suites_json(capsys):
    code, doc, _ = run_cli(capsys, "verify", "lemmas")
    assert code == 0 and doc["pass"]


def test_console_script(tmp_path):
    out = tmp_path / "reps.json"
    proc = subprocess.run([sys.executable, "-m", "cayrep.cli", "--out", str(out), "reps",
                           "--group", "alt:5", "--connection", '{"named": "involutions"}'],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["b"] == 1
