from __future__ import annotations

import json

import pytest

from healie.cli import main
from healie.config import read_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bracket_example(capsys):
    code, out, _ = run(capsys, "bracket", "-c", "sl2_untwisted", "--json", "h[1,0]", "h[0,1]")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["hamiltonian"] == [{"coeff": {"rational": [-1, 1]}, "degree": [1, 1]}]
    assert res["central"] == [{"basis": [[1, -1], [1, 1]], "coeff": {"rational": [-1, 2]}, "degree": [1, 1]}]


def test_bracket_text_and_named_elements(capsys):
    code, out, _ = run(capsys, "bracket", "-c", "sl2_untwisted", "x", "y")
    assert code == 0
    assert out.strip() == "h(0,0) + K1"
    code, out, _ = run(capsys, "bracket", "-c", "sl2_untwisted", "K1", "e(1,0)")
    assert (code, out.strip()) == (0, "0")


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "bracket", "-c", "sl2_untwisted", "h[1,0", "K1")
    assert code == 2
    lines = err.splitlines()
    assert lines[0] == "h[1,0"
    assert lines[1].startswith("     ^")


def test_check_pass_line(capsys):
    code, out, _ = run(capsys, "check", "-c", "sl2_untwisted", "--suite", "jacobi", "-n", "50", "--seed", "7")
    assert code == 0
    assert "PASS 50/50" in out


def test_check_json_deterministic(capsys):
    args = ("check", "-c", "sl2_twisted", "--suite", "form", "-n", "30", "--seed", "3", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    assert json.loads(a)["passed"] == 30


def test_seed_from_environment(capsys, monkeypatch):
    base = ("check", "-c", "sl2_untwisted", "--suite", "ideal", "-n", "5", "--json")
    monkeypatch.setenv("HEALIE_SEED", "41")
    _, env, _ = run(capsys, *base)
    monkeypatch.delenv("HEALIE_SEED")
    _, explicit, _ = run(capsys, *base, "--seed", "41")
    assert json.loads(env)["seed"] == 41
    assert env == explicit


def test_corrupted_config_fails_load(capsys, tmp_path):
    raw = read_config("sl2_untwisted")
    raw["type"] = "custom"
    raw["structure"] = {
        "labels": ["e", "f", "h"],
        "brackets": [["e", "f", {"h": 1}], ["h", "e", {"e": 3}], ["h", "f", {"f": -2}]],
        "cartan": [{"h": 1}],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    code, _, err = run(capsys, "check", "-c", str(path), "--suite", "jacobi", "-n", "10")
    assert code == 1
    assert "failed to load config" in err


def test_missing_config(capsys):
    code, _, err = run(capsys, "dims", "-c", "no_such_thing", "0,0")
    assert code == 1


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "-c", "sl2_twisted", "--json", "0,0", "1,0", "2,3")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert rows[0]["central_dim"] == 2 and rows[0]["loop_dim"] == 1
    assert rows[1]["loop_dim"] == 2 and rows[1]["central_dim"] is None and "error" in rows[1]
    assert rows[2]["central_dim"] == 1


def test_canon(capsys):
    code, out, _ = run(capsys, "canon", "-c", "sl2_untwisted", "--json", "1,0", "1,1")
    assert code == 0
    assert json.loads(out)["coeff"] == {"rational": [1, 2]}
    code, _, _ = run(capsys, "canon", "-c", "sl2_twisted", "1,0", "1,0")
    assert code == 2


def test_reflect(capsys):
    code, out, _ = run(capsys, "reflect", "-c", "sl2_untwisted", "--json", "e(1,0)", "e(1,0)")
    assert code == 0
    res = json.loads(out)
    assert res["result_is_root"] is True
    assert res["result"]["d"] == [{"rational": [-1, 1]}, {"rational": [0, 1]}]


def test_twist(capsys):
    code, out, _ = run(capsys, "twist", "-c", "sl3_twisted", "--bnn", "1", "--json", "e1(2,0,0,0)")
    assert code == 0
    assert json.loads(out)["matrix"][1] == [0, 1, 0, 1]
    code, _, err = run(capsys, "twist", "-c", "sl2_twisted", "--bnn", "1", "e(1,1)")
    assert code == 1
    code, _, _ = run(capsys, "twist", "-c", "sl2_untwisted", "--matrix", "[[2,0],[0,1]]", "K1")
    assert code == 2


def test_act(capsys):
    code, out, _ = run(capsys, "act", "-c", "sl2_untwisted", "--module", "natural", "--json",
                       "--vector", '{"0,0": [0, 1]}', "h[1,0]")
    assert code == 0
    assert json.loads(out)["result"] == {"1,0": [{"rational": [-1, 1]}, {"rational": [0, 1]}]}
    code, out, _ = run(capsys, "act", "-c", "sl2_untwisted", "--module", "trivial", "t[2,1]")
    assert (code, out.strip()) == (0, "(2,1): [1]")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bracket"])
    assert info.value.code == 2
    code, _, _ = run(capsys, "dims", "-c", "sl2_untwisted", "1,2,3")
    assert code == 2
