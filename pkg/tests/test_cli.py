"""
Tests for the command line interface
"""
import json
import sys

import pytest

from sphericalis.cli import build_parser, main, run
from sphericalis.config import get_settings
from sphericalis.models import CliStatus


def json_output(capsys):
    return json.loads(capsys.readouterr().out)


def test_validate_fixture():
    code, report = run(["validate", "group-a1"])
    assert code == 0
    assert report.status == CliStatus.OK
    assert report.payload["datum"] == "group-a1"


def test_validate_failing_file(tmp_path):
    """A positive triple outside the color cone fails the posneg check"""
    doc = json.loads((get_settings().fixtures_dir / "group-a1.json").read_text(encoding="utf-8"))
    doc["colors"] = [[-2]]
    file = tmp_path / "bad.json"
    file.write_text(json.dumps(doc), encoding="utf-8")
    code, report = run(["validate", str(file)])
    assert code == 1
    assert report.status == CliStatus.FAIL
    assert "posneg" in report.diagnostics[0]


def test_json_flag_before_and_after_command(capsys):
    code, _ = run(["--json", "lvalue", "group-a1"])
    assert code == 0
    assert json_output(capsys)["payload"]["c"] == "1 + t^2"
    code, _ = run(["lvalue", "group-a1", "--json"])
    out = json_output(capsys)
    assert out["status"] == "ok"
    assert out["command"] == "lvalue"


def test_lvalue_factored():
    code, report = run(["lvalue", "group-a1", "--factored"])
    assert code == 0
    assert len(report.payload["factors"]) == 4


def test_omega_consistency():
    code, report = run(["omega", "whittaker-a1", "--lambda", "-1"])
    assert code == 0
    assert report.payload["lambda2"] == [-2]
    assert report.payload["consistency"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["omega", "group-a1", "--lambda", "1/4"],
        ["omega", "group-a1", "--lambda", "1"],
        ["lvalue", "whittaker-a1"],
        ["validate", "no-such-datum"],
        ["oracle", "--case", "t-split-ram"],
        ["oracle", "--case", "sideways"],
    ],
)
def test_errors_exit_with_two(argv):
    code, report = run(argv)
    assert code == 2
    assert report.status == CliStatus.ERROR
    assert report.diagnostics


def test_usage_error():
    code, report = run(["omega"])
    assert code == 2
    assert report.status == CliStatus.ERROR


def test_help():
    code, report = run(["--help"])
    assert code == 0
    assert report.status == CliStatus.OK


def test_bw_with_cocycle_battery():
    code, report = run(["bw", "group-a2", "--word", "0,1", "--cocycle", "5", "--seed", "3"])
    assert code == 0
    assert report.payload["cocycle"] == {"seed": 3, "pairs": 5, "failures": []}


def test_volume_tamagawa():
    code, report = run(["volume", "group-a1", "--tamagawa"])
    assert code == 0
    assert report.payload["volume"] == "1 + t^2"
    assert report.payload["tamagawa"] == "1 - t^4"


def test_plancherel_gram_matrix():
    code, report = run(["plancherel", "group-a1", "--lmax", "1", "--prec", "4"])
    assert code == 0
    assert report.payload["orthogonal"] is True
    assert len(report.payload["pairings"]) == 4


def test_eisenstein():
    code, report = run(["eisenstein", "whittaker-a1", "--word", "0"])
    assert code == 0
    assert report.payload["word"] == [0]


def test_path():
    code, report = run(["path", "sl2-sl3"])
    assert code == 0
    assert report.payload["word"] == [0, 1, 0]
    assert report.payload["inductionstep"] == [True]


def test_oracle():
    code, report = run(["oracle", "--case", "u-psi", "--u", "1/2"])
    assert code == 0
    assert report.payload["pass"] is True


def test_examples_listing():
    code, report = run(["examples"])
    assert code == 0
    assert len(report.payload["fixtures"]) == 13
    code, report = run(["examples", "group-a1"])
    assert code == 0
    assert report.payload["fixture"] == "group-a1"


def test_examples_run_one():
    code, report = run(["examples", "group-a1", "--run"])
    assert code == 0
    assert report.payload["reports"][0]["fixture"] == "group-a1"


def test_parser_defaults():
    args = build_parser().parse_args(["validate", "group-a1"])
    assert args.json is False
    assert args.seed == 0


def test_main_exits_with_code(monkeypatch):
    monkeypatch.setattr(sys, "argv", ["sphericalis", "validate", "group-a1"])
    with pytest.raises(SystemExit) as info:
        main()
    assert info.value.code == 0
