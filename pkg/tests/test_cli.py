import json
import os
import shlex
from pathlib import Path

import pytest

from qaffine.cli import _join_negative_values, main

GOLDEN = Path(__file__).parent / "golden"


def _manifest():
    out = []
    for line in (GOLDEN / "commands.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, argv = (part.strip() for part in line.split("|", 1))
        out.append((name, argv))
    return out


def run(capsys, argv):
    status = main(shlex.split(argv) if isinstance(argv, str) else argv)
    cap = capsys.readouterr()
    return status, cap.out, cap.err


@pytest.mark.parametrize("name,argv", _manifest())
def test_golden(capsys, name, argv):
    status, out, _ = run(capsys, argv)
    assert status == 0
    path = GOLDEN / f"{name}.out"
    if os.environ.get("QAFFINE_REGEN_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()


def test_expression_examples(capsys):
    assert run(capsys, ["normal-form", "--expr", "xm(1)*xm(0)"])[1] == "q^(-2)*xm(0)*xm(1)\n"
    assert run(capsys, ["normal-form", "--expr", "1"])[1] == "1\n"
    out = run(capsys, ["normal-form", "--expr", "xm(2)*xm(0) - q^(-4/2)*xm(0)*xm(2)"])[1]
    assert out == "(q^(-2) - 1)*xm(1)*xm(1)\n"


def test_syntax_error_exit_code(capsys):
    status, out, err = run(capsys, ["normal-form", "--expr", "xm(1"])
    assert status == 1 and out == ""
    assert "position 4" in err


def test_domain_error_exit_code(capsys):
    status, _, err = run(capsys, ["normal-form", "--expr", "Wpsi(0)"])
    assert status == 2 and "Wpsi" in err
    status, _, _ = run(capsys, ["verma", "act", "--op", "a", "--idx", "0", "--lambda-h", "1", "--expr", "xm(0)"])
    assert status == 2
    status, _, _ = run(capsys, ["verma", "lemma62", "--A", "1,x", "--m", "1", "--s-from", "3", "--s-to", "4"])
    assert status == 2


def test_usage_error_is_not_zero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gram", "--length", "2"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_negative_option_values_are_joined():
    argv = ["gram", "--window", "-2..2", "--dsum", "-1", "--length", "2"]
    assert _join_negative_values(argv) == ["gram", "--window=-2..2", "--dsum=-1", "--length", "2"]


def test_check_relations(capsys):
    status, out, _ = run(capsys, "check relations --suite omega --rel eq28 --samples 5 --seed 42 --len-max 3 --mode-window -3..3 --idx-window -4..4")
    assert status == 0 and out.startswith("eq28: pass")
    status, out, _ = run(capsys, "check relations --suite kashiwara --rel mixed --samples 5 --format json")
    assert status == 0 and json.loads(out)["passed"] is True
    status, _, _ = run(capsys, "check relations --suite omega --rel eq99")
    assert status == 2


def test_suite_json_and_determinism(capsys):
    first = run(capsys, "suite identity18 --format json")
    second = run(capsys, "suite identity18 --format json")
    assert first == second
    report = json.loads(first[1])
    assert first[0] == 0
    assert report["schemaVersion"] == 1 and report["suite"] == "identity18"
    assert report["failures"] == []


def test_budget_warning_goes_to_stderr(capsys, monkeypatch):
    monkeypatch.setenv("QAFFINE_SUITE_BUDGET", "0")
    status, out, err = run(capsys, "suite identity18")
    assert status == 0 and "budget" in err and "budget" not in out
