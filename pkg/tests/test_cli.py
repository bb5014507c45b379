import json
import subprocess
import sys

import pytest

from hilbchar.cli import dump_json, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_examples(capsys):
    code, out, _ = run(capsys, "coeffs", "--class", "chern", "--order", "5", "--format", "json")
    assert code == 0
    assert json.loads(out)["a"] == ["1", "0", "-1/3", "0", "2/5"]
    code, out, _ = run(capsys, "coeffs", "--class", "ch", "--order", "4", "--format", "json")
    assert json.loads(out)["b"] == ["-1", "-1", "-1/6", "-1/6"]
    code, out, _ = run(capsys, "coeffs", "--class", "trivial", "--order", "3", "--format", "json")
    data = json.loads(out)
    assert data["a"] == ["1", "0", "0"] and data["b"] == ["0"] * 3
    assert data["akl"] == [["0", "0"], ["0"]]


def test_coeffs_text(capsys):
    code, out, _ = run(capsys, "coeffs", "--class", "chern", "--order", "2")
    assert code == 0
    assert out.splitlines() == [
        "# tangent coefficients, class chern, order 2",
        "a_1 = 1", "a_2 = 0", "b_1 = -1", "b_2 = 1", "a_1,1 = 3/2",
    ]


def test_state_examples(capsys):
    assert run(capsys, "state", "--class", "ch", "--n", "1", "--abstract")[1].splitlines() == ["2 q1(1)", "-1 q1(K)"]
    assert run(capsys, "state", "--class", "chern", "--n", "0")[1].splitlines() == ["1 |0>"]
    assert run(capsys, "state", "--class", "chern", "--n", "1", "--gamma", "2")[1].splitlines() == ["1 q1(1)"]


def test_state_json(capsys):
    code, out, _ = run(capsys, "state", "--class", "chern", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert {"coeff": "3/2", "monomial": [[[1, 1], "1"]]} in data
    assert all(set(t) == {"coeff", "monomial"} for t in data)


def test_taut_and_ch(capsys):
    code, out, _ = run(capsys, "taut", "--class", "chern", "--order", "3", "--format", "json")
    assert json.loads(out)["c"] == ["1", "-1/2", "1/3"]
    code, out, _ = run(capsys, "taut", "--class", "chern", "--n", "1")
    assert out.splitlines() == ["1 q1(1)", "1 q1(F)"]
    code, out, _ = run(capsys, "ch", "--n", "1")
    assert out.splitlines() == ["2 q1(1)", "-1 q1(K)"]


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "all", "--gamma", "2,3", "--class", "chern,todd", "--order", "6")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--checks", "cases", "--order", "10")
    assert code == 0
    code, _, err = run(capsys, "verify", "--checks", "defw", "--gamma", "1")
    assert code == 2 and "gamma" in err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "defw", "--gamma", "2", "--class", "chern", "--order", "4",
                       "--format", "json")
    assert json.loads(out) == [{"check": "defw gamma=2 class=chern order=4", "passed": True, "mismatch": None}]


def test_spec_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"name": "mine", "f": ["1"]}))
    _, out, _ = run(capsys, "coeffs", "--spec-file", str(path), "--order", "5", "--format", "json")
    data = json.loads(out)
    assert data["class"] == "mine" and data["a"] == ["1", "0", "-1/3", "0", "2/5"]
    dual = tmp_path / "d.json"
    dual.write_text(json.dumps({"name": "d", "f": [["0", "1"]], "ring": "dual"}))
    _, out, _ = run(capsys, "coeffs", "--spec-file", str(dual), "--order", "2", "--format", "json")
    # F = 1 here, so g = x and the b series is log(1 - eps x)
    assert json.loads(out)["b"] == ["-1*eps", "0"]


@pytest.mark.parametrize("argv", [
    ["coeffs", "--class", "nope"],
    ["coeffs", "--order", "3"],
    ["coeffs", "--class", "chern", "--order", "0"],
    ["state", "--class", "chern", "--n", "-1"],
    ["state", "--class", "chern", "--n", "1", "--gamma", "1"],
    ["verify", "--checks", "bogus"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("hilbchar: error:")


def test_malformed_spec_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "coeffs", "--spec-file", str(path))[0] == 2
    path.write_text(json.dumps({"f": ["1/0"]}))
    assert run(capsys, "coeffs", "--spec-file", str(path))[0] == 2


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "coeffs", "--class", "todd", "--order", "6", "--format", "json")
    assert dump_json(json.loads(out)) + "\n" == out


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "hilbchar", "state", "--class", "todd", "--n", "3", "--gamma", "3"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_exit_code_on_failure(monkeypatch, capsys):
    from hilbchar import oracle

    monkeypatch.setattr(oracle, "verify_cases", lambda *a: oracle.Report("cases", False, (1, 1)))
    code, out, _ = run(capsys, "verify", "--checks", "cases")
    assert code == 1 and "FAIL cases first mismatch at (1, 1)" in out
