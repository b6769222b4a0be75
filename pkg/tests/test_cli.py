import io
import json

import pytest

from adlv.cli import run
from adlv.kostant import QPolynomial


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, text


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_weight_multiplicity_example():
    code, js = call_json("weights", "mult", "--group", "E6", "--mu", "2,0,0,0,0,1", "--lambda", "0,0,0,0,1,0")
    assert code == 0 and js["dim"] == 14 and js["schema"] == "v1"


def test_isocrystal_example():
    code, js = call_json("isocrystal", "info", "--group", "B4", "--b", "1")
    assert code == 0 and js["defect"] == 1 and js["lambda_b_plus"] == "e1"


def test_satake_example_and_round_trip():
    code, js = call_json("satake", "m0", "--group", "A1", "--lambda", "0", "--s", "4")
    assert code == 0 and js["text"] == "1"
    assert QPolynomial.from_json(js["polynomial"]) == QPolynomial.one()


def test_precondition_failure_exit_code():
    code, js = call_json("chenzhu", "count", "--group", "B4", "--b", "1", "--mu", "0,0,0,0")
    assert code == 2 and js["error"] == "EmptyADLVError"
    code, js = call_json("weights", "mult", "--group", "Q7", "--mu", "1")
    assert code == 2
    code, js = call_json("nonsense")
    assert code == 2


def test_budget_exit_code(monkeypatch):
    monkeypatch.setenv("ADLV_WORK_BUDGET", "3")
    code, js = call_json("satake", "m0", "--group", "B3", "--lambda", "6,4,2")
    assert code == 3 and js["error"] == "resource"


def test_dntree_commands():
    code, js = call_json("dntree", "check", "--n", "7", "--nu", "++-+-+")
    assert code == 0 and js["admissible"] is True
    code, js = call_json("dntree", "build", "--n", "5", "--nu", "+-++")
    assert js["leaves"] == 8
    code, js = call_json("dntree", "cancel", "--n", "5", "--t", "1", "--L", "3")
    assert code == 0 and isinstance(js["value"], int) and js["vanishes"] == (js["value"] == 0)


def test_csv_output():
    code, text = call("chenzhu", "estimate", "--group", "B2", "--b", "1", "--lambda", "1,0",
                      "--s", "2,4", "--q", "2", "--csv")
    lines = text.strip().splitlines()
    assert code == 0 and lines[0] == "s,value" and len(lines) == 3


def test_output_is_deterministic():
    argv = ("chenzhu", "lambda-set", "--group", "D5", "--b", "2", "--bound", "4")
    assert call(*argv) == call(*argv)


@pytest.mark.parametrize("jobs", [1, 2])
def test_batch(tmp_path, jobs):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"rows": [
        {"argv": ["isocrystal", "info", "--group", "B4", "--b", "1"]},
        {"argv": ["chenzhu", "count", "--group", "B4", "--mu", "0,0,0,0"]},
        {"argv": ["weights", "dim", "--group", "E6", "--mu", "1,0,0,0,0,0"]},
    ]}))
    out = tmp_path / "out"
    code, js = call_json("batch", str(conf), "--out", str(out), "--jobs", str(jobs))
    assert code == 0 and js["rows"] == 3 and js["failed"] == 1
    index = json.loads((out / "index.json").read_text())
    assert [r["exit"] for r in index["rows"]] == [0, 2, 0]
    row2 = json.loads((out / "row-0002.json").read_text())
    assert row2["result"]["dim"] == 27
    assert not [p for p in out.iterdir() if p.name.startswith(".tmp")]
