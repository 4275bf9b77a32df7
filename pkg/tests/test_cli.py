from __future__ import annotations

import json
import subprocess
import sys

import pytest

from eisres.cli.config import ConfigError, RunConfig, load_field, parse_alpha, parse_h, parse_ideal, parse_point
from eisres.cli.main import main
from eisres.cli.report import Check, Report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--field", "Q(sqrt2)", "--format", "json", "--no-timing")
    assert code == 0
    info = json.loads(out)["info"]
    assert info["discriminant"] == "8"
    assert info["fundamental_units"] == "(1 + 1*w1)"
    assert info["ray_unit_generator_mod_3"] == "(577 + 408*w1)"


def test_zeta_command(capsys):
    code, out, _ = run(capsys, "zeta", "--field", "Q(sqrt5)", "--x", "1/3,0", "--weight", "2", "--truncation", "2000", "--format", "csv", "--no-timing")
    assert code == 0
    assert "-2/135" in out
    code, out, _ = run(capsys, "zeta", "--field", "Q", "--x", "1/3", "--eps", "all", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["value"] == "0" and "vanishing=true" in row["params"]


def test_zeta_weight_one_reports_oracle(capsys):
    code, out, _ = run(capsys, "zeta", "--field", "Q(sqrt2)", "--x", "1/3,0", "--weight", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"][0]["oracle"] == "1/3"


def test_residue_command(capsys):
    code, out, _ = run(capsys, "residue", "--alpha", "0,1|1,0@1; 0,0|0,0@-1", "--truncation", "2000", "--format", "json", "--no-timing")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["oracle"] for r in rows] == ["-46/729", "-46/729"]


def test_failing_fixture_exits_one(capsys):
    code, out, err = run(capsys, "verify", "failing-fixture", "--no-timing")
    assert code == 1
    assert "FAIL" in out and "fixture.dedekind_against_wrong_oracle" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["field-info", "--field", '{"polynomial": [1, 0, 2]}'],
        ["field-info", "--field", "{not json"],
        ["field-info", "--field", "no-such-field"],
        ["residue", "--alpha", "0,1|1,0"],
        ["residue", "--alpha", "0,1|1,0@1"],
        ["residue", "--alpha", "0", "--h", "1,0;0,0;0,0;0,0"],
        ["zeta", "--precision", "5"],
        ["zeta", "--level", "0"],
    ],
)
def test_bad_config_exits_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("eisres: error:")


def test_verify_cusps_byte_stable(capsys):
    first = run(capsys, "verify", "cusps", "--no-timing", "--format", "csv")
    second = run(capsys, "verify", "cusps", "--no-timing", "--format", "csv")
    assert first == second
    assert first[0] == 0


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "cusps", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    payload = json.loads(path.read_text())
    assert payload["passed"] and payload["header"]["suite"] == "cusps"
    assert all("seconds" in r for r in payload["rows"])


def test_field_config_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"name": "Q(sqrt3)", "polynomial": [1, 0, -3]}))
    F = load_field(str(path))
    assert F.discriminant == 12


def test_parsers(Q2):
    assert parse_point("1/3,0", Q2) == Q2.element([1, 0]) * Q2(1) / 3
    assert parse_ideal(None, Q2).norm == 1
    assert parse_ideal("3,0", Q2).norm == 9
    alpha = parse_alpha("1,0|0,0@1; 0,0|0,0@-1", Q2, 3)
    assert sorted(l for _, l in alpha) == [-1, 1]
    h = parse_h("1,0;1,0;0,0;1,0", Q2, 3)
    assert h.is_special()
    with pytest.raises(ConfigError):
        parse_point("1", Q2)
    with pytest.raises(ConfigError):
        RunConfig(format="xml")


def test_report_rendering():
    rep = Report("demo", {"seed": 0}, timing=False)
    rep.add(Check("a", 0.5, None, 1e-12, 1e-9))
    rep.add(Check("b", 1.0, 2, 1.0, 1e-9))
    assert not rep.passed and rep.failing == ["b"]
    table = rep.render("table")
    assert "seconds" not in table and table.endswith("result: FAIL (1/2)\n")
    assert json.loads(rep.render("json"))["rows"][1]["passed"] == "false"
    assert rep.render("csv").splitlines()[2] == "check,value,oracle,residual,tolerance,passed,params"


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "eisres.cli.main", "field-info", "--field", "Q", "--no-timing"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "discriminant: 1" in out.stdout
