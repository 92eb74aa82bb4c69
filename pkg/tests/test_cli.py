import csv
import json

import pytest

from fraudsim.server.cli import main


class TestScenarioGenerate:
    def test_writes_scenario_and_figure(self, tmp_path, capsys):
        out = tmp_path / "scenario.json"
        rc = main(["scenario", "generate", "--seed", "42", "--out", str(out), "--figure"])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["schema"] == "scenario/v1"
        assert len(doc["stocks"]) == 10
        assert out.with_suffix(".png").exists()
        assert "10 stocks (4 manipulated)" in capsys.readouterr().out

    def test_identical_seed_identical_file(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["scenario", "generate", "--seed", "7", "--out", str(a)])
        main(["scenario", "generate", "--seed", "7", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_bad_config_exits_nonzero(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text("version: 1\nstocks: []\n")
        rc = main(["scenario", "generate", "--config", str(bad), "--out", str(tmp_path / "x.json")])
        assert rc == 1
        assert "error:" in capsys.readouterr().err


class TestCohortGenerate:
    def test_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "cohort.csv"
        rc = main(["cohort", "generate", "--seed", "42", "--out", str(out)])
        assert rc == 0
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 34  # header + 33
        assert rows[0][0] == "session_id" and rows[0][-1] == "label"


class TestEvaluate:
    def test_prints_accuracy_table(self, capsys):
        rc = main(["evaluate", "--seed", "42"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "DecisionTree" in out and "GradientBoostedTrees" in out and "Perceptron" in out


class TestElbow:
    def test_writes_curve_and_figure(self, tmp_path, capsys):
        rc = main(["elbow", "--seed", "42", "--k", "1..8", "--out-dir", str(tmp_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "chosen_k=2" in out
        with open(tmp_path / "elbow.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 8
        chosen = [r for r in rows if r["chosen"] == "1"]
        assert len(chosen) == 1 and chosen[0]["k"] == "2"
        inertias = [float(r["inertia"]) for r in rows]
        assert all(inertias[i] >= inertias[i + 1] - 1e-9 for i in range(len(inertias) - 1))
        assert (tmp_path / "elbow.png").stat().st_size > 0


class TestTrain:
    def test_writes_model(self, tmp_path, capsys):
        out = tmp_path / "model.json"
        rc = main(["train", "--seed", "42", "--splits", "5", "--out", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["schema"] == "pipeline/v1"
        assert len(doc["selected_features"]) == 5


class TestReportBuild:
    def test_writes_report_bundle(self, tmp_path, capsys):
        rc = main([
            "report", "build", "--seed", "42", "--out-dir", str(tmp_path / "rep"),
            "--timestamp", "2026-01-01T00:00:00Z",
        ])
        assert rc == 0
        rep = json.loads((tmp_path / "rep" / "report.json").read_text())
        assert rep["generated_at"] == "2026-01-01T00:00:00Z"
        assert (tmp_path / "rep" / "descriptive.csv").exists()
        assert (tmp_path / "rep" / "figures" / "group_means.png").stat().st_size > 0
        assert (tmp_path / "rep" / "figures" / "fraud_trap.png").stat().st_size > 0
        text = (tmp_path / "rep" / "report.txt").read_text()
        assert "Findings" in text

    def test_byte_identical_reports_with_fixed_timestamp(self, tmp_path):
        for name in ("r1", "r2"):
            main([
                "report", "build", "--seed", "42", "--out-dir", str(tmp_path / name),
                "--timestamp", "2026-01-01T00:00:00Z", "--no-figures",
            ])
        a = (tmp_path / "r1" / "report.json").read_bytes()
        b = (tmp_path / "r2" / "report.json").read_bytes()
        assert a == b


class TestBotsRun:
    def test_runs_and_dumps_footprints(self, tmp_path, capsys):
        rc = main([
            "bots", "run", "--n", "2", "--archetype", "novice",
            "--seed", "0", "--out-dir", str(tmp_path / "runs"),
        ])
        assert rc == 0
        with open(tmp_path / "runs" / "footprints.csv") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 3
        logs = list((tmp_path / "runs").glob("bot-*.jsonl"))
        assert len(logs) == 2
