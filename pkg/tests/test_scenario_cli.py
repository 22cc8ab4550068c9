import json

import pytest

from addcomp.cli import main
from addcomp.scenario import EXIT_SCHEMA, Scenario, ScenarioError, run_scenario

from conftest import SCENARIOS

ALL = sorted(p.name for p in SCENARIOS.glob("*.json"))


@pytest.mark.parametrize("name", ALL)
def test_shipped_scenarios_pass(name, tmp_path):
    report, code, msg = run_scenario(SCENARIOS / name, tmp_path)
    assert code == 0, msg or [c.to_json() for c in report.checks if not c.passed]
    assert (tmp_path / "report.json").exists()
    assert all(not r["audit_problems"] for r in report.renders.values())


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_scenario(SCENARIOS / "cor4_8.json", a)
    run_scenario(SCENARIOS / "cor4_8.json", b)
    names = sorted(p.name for p in a.iterdir())
    assert {"report.json", "fig7.svg", "fig7.txt", "fig7.png", "fig7.csv", "coverage.csv"} <= set(names)
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes(), n


def test_lemma23_report_contents(tmp_path):
    report, code, _ = run_scenario(SCENARIOS / "lemma2_3.json", tmp_path)
    data = json.loads((tmp_path / "report.json").read_text())
    mini = next(c for c in data["checks"] if c["name"] == "minimality")
    assert [e["x0"] for e in mini["entries"]] == [[1, 1], [0, 1]]


def _write(tmp_path, obj):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(obj))
    return p


@pytest.mark.parametrize("obj", [
    {"schema": "addcomp/2", "checks": []},
    {"schema": "addcomp/1"},
    {"schema": "addcomp/1", "checks": [{"type": "complement", "W": "W", "C": "C"}]},
    {"schema": "addcomp/1", "sets": {"W": "no-such-id"}, "checks": []},
    {"schema": "addcomp/1", "checks": [{"type": "explode"}]},
    {"schema": "addcomp/1", "window": "1..0", "checks": []},
])
def test_schema_violations_exit_64(obj, tmp_path):
    _, code, msg = run_scenario(_write(tmp_path, obj))
    assert code == EXIT_SCHEMA and msg


def test_failed_and_unverified_exit_codes(tmp_path):
    base = {"schema": "addcomp/1", "group": {"rank": 2},
            "sets": {"W": "cor3.2-W+", "C": {"kind": "finite", "elements": [[0, 0]]},
                     "X": "ex6.2-W", "M": "ex6.2-M"},
            "window": "-2..2,-2..2"}
    bad = dict(base, checks=[{"type": "complement", "W": "W", "C": "C"}])
    assert run_scenario(_write(tmp_path, bad))[1] == 2
    unv = dict(base, checks=[{"type": "minimality", "W": "X", "C": "M", "base_window": "-2..2"}])
    assert run_scenario(_write(tmp_path, unv))[1] == 3
    wrong = dict(base, checks=[{"type": "complement", "W": "W", "C": "C", "expect": "Covered"}])
    assert run_scenario(_write(tmp_path, wrong))[1] == 2


def test_scenario_loader_rejects_missing_window():
    with pytest.raises(ScenarioError):
        Scenario.from_json({"schema": "addcomp/1", "sets": {"W": "cor4.8-W", "M": "cor4.8-M"},
                            "checks": [{"type": "complement", "W": "W", "C": "M"}]})


# -- CLI ---------------------------------------------------------------------


def test_cli_check_complement_exit_codes(capsys):
    assert main(["check-complement", "--w", "cor4.8-W", "--c", "cor4.8-M", "--window", "-5..5,-5..5"]) == 0
    finite = '{"kind":"finite","group":{"rank":2},"elements":[[0,0]]}'
    assert main(["check-complement", "--w", "cor3.2-W+", "--c", finite, "--window", "-2..2,-2..2"]) == 2
    lattice = '{"kind":"lattice","basis":[[20,0],[0,20]]}'
    w = '{"kind":"finite","group":{"rank":2},"elements":[[0,0]]}'
    assert main(["check-complement", "--w", w, "--c", lattice, "--window", "0..1,0..1", "--radius", "2"]) == 3


def test_cli_json_output(capsys):
    assert main(["check-complement", "--json", "--w", "lemma2.3-W", "--c", "lemma2.3-C",
                 "--window", "-3..3,-3..3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "covered" and data["witnessed"] == 49


def test_cli_check_minimal(capsys):
    assert main(["check-minimal", "--w", "cor4.8-W", "--c", "cor4.8-M", "--base-window", "-3..3"]) == 0
    assert "minimal: 7/7" in capsys.readouterr().out


def test_cli_moderation(capsys):
    assert main(["moderation", "--json", "--u", '{"poly":[[[2],1]],"arity":1}', "--method", "ball",
                 "--sample", "-2..2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [row[1] for row in data["sample"]] == [-16, -4, 0, -4, -16]
    assert main(["moderation", "--u", '{"poly":[[[2],1]],"arity":1}', "--subgroup-index", "3"]) == 0


def test_cli_build_and_replay(tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["build", "--recipe", "thm511", "--b", '{"kind":"finite","group":{"rank":1},"elements":[[0]]}',
                 "--u", '{"poly":[[[2],1]],"arity":1}', "--subgroup", "3", "--g2", "1",
                 "--m", '{"kind":"full","group":{"rank":1}}', "--v", '{"poly":[[[2],-2]],"arity":1}',
                 "--out", str(out)]) == 0
    assert main(["check-complement", "--w", "ex6.1-envelope", "--c", str(out), "--window", "-4..4,-4..4"]) == 0
    assert main(["build", "--recipe", "coset-lift", "--group", "Z4xZ2",
                 "--m", '{"kind":"finite","group":"Z4xZ2","elements":[[0,0],[2,0]]}',
                 "--subgroup", "1,0", "--reps", "0,0;0,1"]) == 0
    assert main(["build", "--recipe", "graph"]) == 64


def test_cli_catalog_oracle_render(tmp_path, capsys):
    assert main(["catalog"]) == 0
    assert "cor4.8-W" in capsys.readouterr().out
    assert main(["catalog", "--id", "cor4.8-W", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["set"]["kind"] == "spiked"
    assert main(["catalog", "--id", "nope"]) == 64
    assert main(["oracle", "--group", "Z4xZ2", "--w", "0,0;1,0", "--list-minimal", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 4
    assert main(["oracle", "--group", "Z6", "--thm24"]) == 0
    svg = tmp_path / "f.svg"
    assert main(["render", "--set", "W=cor4.8-W", "--set", "M=cor4.8-M", "--window", "-4..4,-4..4",
                 "--format", "svg", "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    assert main(["render", "--set", "cor4.8-W", "--format", "png", "--out", str(tmp_path / "f.png")]) == 0
    assert main(["render", "--set", "cor4.9-W", "--window", "-1..1,-1..1,-1..1"]) == 64


def test_cli_run(tmp_path, capsys):
    assert main(["run", str(SCENARIOS / "prop3_1_demo.json"), "--out", str(tmp_path)]) == 0
    assert "PASS single-removals" in capsys.readouterr().out
