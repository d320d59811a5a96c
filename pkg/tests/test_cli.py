import json
import subprocess
import sys
from pathlib import Path

import pytest

from indpro.cli import main
from indpro.documents import load

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("what, name, code", [
    ("admissible", "laurent_p2_m2_2.json", 0),
    ("kato", "laurent_p2_m2_2.json", 0),
    ("kato", "laurent_fattened.json", 1),
    ("admissible", "rectangle_not_admissible.json", 1),
    ("ses", "ses_random.json", 0),
    ("ses", "ses_not_exact.json", 1),
])
def test_check(capsys, what, name, code):
    got, out, err = run(capsys, "check", what, FIX / name)
    assert got == code and err == ""
    assert out.startswith(what) and ("ok" in out) == (code == 0)


def test_check_json_and_counterexample(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "admissible", FIX / "rectangle_not_admissible.json",
                       "--json", "--dump-dir", tmp_path)
    body = json.loads(out)
    assert code == 1 and body["ok"] is False and body["triple"] == [0, 2, 3]
    assert load(tmp_path / "admissible-counterexample.json").kind == "ses"


@pytest.mark.parametrize("a, b, code", [
    ("roof_a.json", "roof_a_pushed.json", 0),
    ("roof_a.json", "roof_a_doubled.json", 1),
    ("uroof_identity.json", "uroof_shift_roundtrip.json", 0),
    ("uroof_identity.json", "uroof_negated.json", 1),
])
def test_roof_eq(capsys, a, b, code):
    got, out, _ = run(capsys, "roof-eq", FIX / a, FIX / b)
    assert got == code
    assert out.strip() == ("equivalent" if code == 0 else "not equivalent")


def test_roof_eq_kind_mismatch(capsys):
    code, out, err = run(capsys, "roof-eq", FIX / "roof_a.json", FIX / "uroof_identity.json")
    assert code == 2 and out == "" and "different kinds" in err


def test_strictify(capsys, tmp_path):
    code, out, _ = run(capsys, "strictify", FIX / "pro_idempotent.json")
    assert code == 0 and json.loads(out)["dims"] == [1, 1, 1, 1]
    target = tmp_path / "s.json"
    code, out, _ = run(capsys, "strictify", FIX / "pro_nilpotent.json", "--out", target)
    assert code == 0 and "dims=[0, 0, 0, 0]" in out
    assert load(target).payload.dims == (0, 0, 0, 0)


def test_dualize_and_embed(capsys):
    code, out, _ = run(capsys, "dualize", FIX / "laurent_p2_m2_2.json")
    assert code == 0 and json.loads(out)["kind"] == "pi_window"
    code, out, _ = run(capsys, "embed-ind", FIX / "ind_chain.json", "--depth", 2)
    body = json.loads(out)
    assert code == 0 and (body["lo"], body["hi"]) == (-2, 2)


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "laurent", "--p", 3, "--lo", -2, "--hi", 3)
    assert code == 0
    assert out.splitlines()[0] == "laurent p=3 lo=-2 hi=3 corner_dim=5"
    assert "FAIL" not in out


def test_harness_is_reproducible(capsys, monkeypatch):
    monkeypatch.delenv("INDPRO_SEED", raising=False)
    a = run(capsys, "harness", "three-squares", "--trials", 5, "--seed", 3)
    b = run(capsys, "harness", "three-squares", "--trials", 5, "--seed", 3)
    assert a == b and a[0] == 0
    assert a[1].splitlines()[-1] == "trials=5 failures=0"
    monkeypatch.setenv("INDPRO_SEED", "3")
    c = run(capsys, "harness", "three-squares", "--trials", 5, "--seed", 99)
    assert c == a


def test_harness_json(capsys, monkeypatch):
    monkeypatch.delenv("INDPRO_SEED", raising=False)
    code, out, _ = run(capsys, "harness", "cartesian", "--trials", 4, "--json")
    body = json.loads(out)
    assert code == 0 and body["trials"] == 4 and body["failures"] == 0


@pytest.mark.parametrize("args", [
    ["bogus"],
    ["check", "kato", "does-not-exist.json"],
    ["check", "ses", str(FIX / "laurent_p2_m2_2.json")],
    ["harness", "cartesian", "--max-dim", "12"],
    ["harness", "cartesian", "--trials", "-1"],
    ["embed-ind", str(FIX / "pro_idempotent.json")],
])
def test_input_errors_exit_2(capsys, args):
    code, out, err = run(capsys, *args)
    assert code == 2 and out == "" and err


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("INDPRO_SEED", "abc")
    code, out, err = run(capsys, "harness", "cartesian", "--trials", 1)
    assert code == 2 and "INDPRO_SEED" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "indpro", "demo", "laurent"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("laurent p=2")
