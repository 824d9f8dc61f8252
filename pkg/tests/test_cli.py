from __future__ import annotations

import json
import subprocess
import sys

import pytest

from suslin_clifford.cli import EXIT_USAGE, main, parse_ranks


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_symbolic_s2(capsys):
    code, out, _ = run(capsys, "gen", "--n", "2", "--a", "b,f", "--b", "a,p", "--ring", "poly:a,b,f,p")
    assert code == 0
    assert out.splitlines() == ["( b  f)", "(-p  a)"]


def test_gen_base_case(capsys):
    assert run(capsys, "gen", "--n", "1", "--a", "5", "--b", "7")[1].strip() == "(5)"


def test_gen_det(capsys):
    code, out, _ = run(capsys, "gen", "--n", "3", "--a", "1,2,3", "--b", "4,5,6", "--det")
    assert code == 0 and out.splitlines()[-1] == "det = 1024"


def test_gen_json_both(capsys):
    _, out, _ = run(capsys, "gen", "--n", "1", "--a", "5", "--b", "7", "--flavor", "both", "--format", "json")
    plain, bar = json.loads(out)
    assert plain == {"n": 1, "flavor": "plain", "entries": [["5"]]}
    assert bar["flavor"] == "bar" and bar["entries"] == [["7"]]


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--n", "2", "--a", "1,x", "--b", "1,2"],
        ["gen", "--n", "2", "--a", "1", "--b", "1,2"],
        ["gen", "--n", "0", "--a", "", "--b", ""],
        ["gen", "--n", "1", "--a", "1", "--b", "1", "--ring", "mod:1"],
        ["verify", "--suite", "lemma-f", "--n", "0"],
        ["verify", "--suite", "nonsense"],
        ["verify", "--n", "3..x"],
        ["verify", "--suite", "lemma-a", "--trials", "0", "--mode", "randomized"],
        ["blocks", "--p", "1"],
        ["blocks", "--x", "{not json"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert "error" in err


def test_lemma_f_error_mentions_restriction(capsys):
    _, _, err = run(capsys, "verify", "--suite", "lemma-f", "--n", "0")
    assert "n >= 1" in err


def test_argparse_errors_exit_64():
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--n", "two", "--a", "1", "--b", "1"])
    assert exc.value.code == EXIT_USAGE


def test_bases_text(capsys):
    assert run(capsys, "bases", "--n", "0")[1].splitlines() == ["B1 = [e1]", "B0 = [1]"]
    assert run(capsys, "bases", "--n", "1")[1].splitlines()[0] == "B1 = [e2, e1]"


def test_bases_json(capsys):
    _, out, _ = run(capsys, "bases", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert len(data["B1"]) == 4
    assert {"mask": [1, 2, 3], "sign": 1} in data["B1"]
    assert all(set(e) == {"mask", "sign"} for e in data["B1"] + data["B0"])


def test_blocks_suslin_basis(capsys):
    code, out, _ = run(capsys, "blocks", "--p", "1,2", "--a", "3", "--f", "4,5", "--b", "6", "--basis", "suslin", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["q"] == "32"
    # S_3((b, f1, f2), (a, p1, p2)) with the constructed bases
    assert data["S"] == data["phi10"]
    assert data["S"][0] == ["6", "0", "4", "5"]


def test_blocks_symbolic_and_x_json(capsys, tmp_path):
    code, out, _ = run(capsys, "blocks", "--symbolic", "--n", "1", "--basis", "suslin", "--format", "json")
    assert code == 0
    assert json.loads(out)["S"] == [["b", "f1"], ["-p1", "a"]]
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"p": [], "a": "5", "f": [], "b": "7"}))
    _, out, _ = run(capsys, "blocks", "--x", f"@{path}", "--format", "json")
    data = json.loads(out)
    assert data["phi10"] == [["7"]] and data["phi01"] == [["5"]]


def test_verify_symbolic_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--n", "0..3", "--ring", "poly", "--mode", "symbolic")
    assert code == 0
    lines = [json.loads(l) for l in out.splitlines()]
    assert lines and all(l["status"] == "pass" for l in lines)
    assert all("elapsed" not in l for l in lines)


def test_verify_key_lemma_mod97(capsys):
    argv = ["verify", "--suite", "key-lemma", "--n", "2", "--ring", "mod:97", "--trials", "100", "--seed", "42"]
    code, out, _ = run(capsys, *argv)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 100
    assert all(json.loads(l)["status"] == "pass" for l in lines)
    # byte-identical on rerun
    assert run(capsys, *argv)[1] == out


def test_verify_env_default_ring(capsys, monkeypatch):
    monkeypatch.setenv("SUSLIN_RING", "mod:7")
    _, out, _ = run(capsys, "verify", "--suite", "lemma-a", "--n", "1", "--trials", "1")
    assert json.loads(out)["ring"] == "mod:7"


def test_verify_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "lemma-a", "--n", "1", "--timing")
    assert "elapsed" in json.loads(out)


def test_parse_ranks():
    assert parse_ranks("0..3") == [0, 1, 2, 3]
    assert parse_ranks("2") == [2]
    assert parse_ranks("1,3") == [1, 3]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "suslin_clifford", "gen", "--n", "1", "--a", "5", "--b", "7"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "(5)"


def test_verify_exit_code_counts_failures(capsys, monkeypatch):
    from dataclasses import replace

    from suslin_clifford import verify

    def broken(src, n):
        x = src.element(n)
        return verify._Outcome(False, {"x": x.to_json(), "check": "deliberately broken"})

    monkeypatch.setitem(verify.THEOREMS, "lemma-a", replace(verify.THEOREMS["lemma-a"], body=broken))
    code, out, _ = run(capsys, "verify", "--suite", "lemma-a", "--n", "1", "--trials", "3")
    assert code == 3
    assert all("counterexample" in json.loads(l) for l in out.splitlines())
    code, _, _ = run(capsys, "verify", "--suite", "lemma-a", "--n", "1", "--trials", "200")
    assert code == 125
