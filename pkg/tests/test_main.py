# -*- coding: utf-8 -*-
import json

import pandas as pd
import pytest

from zobopt.main import EXIT_OK, EXIT_RUNTIME, EXIT_VALIDATION, main

QUAD_BALL = """
[problem]
kind = "quad_ball"
dim = 6
seed = 1

[run]
max_iters = 20
seeds = [0, 1]

[[solver]]
algorithm = "zob_gda"
block_size = 3
alpha = 0.1
beta = 0.05
"""

TOY_GRID = """
[problem]
kind = "toy_grid"
dim = 4

[run]
max_iters = 3
seeds = [0]
project_x = true

[[solver]]
algorithm = "zob_gda"
block_size = 2
alpha = 0.01
beta = 0.02
"""


@pytest.fixture
def write_config(tmp_path):
    def _write(text, name="plan.toml"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


class TestRunCommand:
    def test_writes_traces(self, tmp_path, write_config):
        out = tmp_path / "out"
        assert main(["run", write_config(QUAD_BALL), "--out", str(out)]) == EXIT_OK
        df = pd.read_csv(out / "traces.csv")
        assert sorted(df["seed"].unique()) == [0, 1]
        assert df.groupby("seed")["queries"].max().tolist() == [80, 80]
        assert not (out / "failures.csv").exists()

    def test_seed_offset(self, tmp_path, write_config):
        out = tmp_path / "out"
        assert main(["run", write_config(QUAD_BALL), "--out", str(out), "--seed-offset", "10"]) == EXIT_OK
        assert sorted(pd.read_csv(out / "traces.csv")["seed"].unique()) == [10, 11]

    def test_invalid_block_is_validation_error(self, tmp_path, write_config):
        bad = QUAD_BALL.replace("block_size = 3", "block_size = 0")
        assert main(["run", write_config(bad), "--out", str(tmp_path)]) == EXIT_VALIDATION
        assert not (tmp_path / "traces.csv").exists()

    def test_missing_config(self, tmp_path):
        assert main(["run", str(tmp_path / "nope.toml")]) == EXIT_VALIDATION


class TestSummarizeCommand:
    def test_writes_summary(self, tmp_path, write_config):
        out = tmp_path / "out"
        main(["run", write_config(QUAD_BALL), "--out", str(out)])
        assert main(["summarize", str(out), "--targets", "0.5,1e-9"]) == EXIT_OK
        summary = pd.read_csv(out / "summary.csv", float_precision="round_trip")
        assert summary["target_rel_error"].tolist() == [0.5, 1e-9]
        assert summary["success_fraction"].iloc[1] == 0.0

    def test_without_fixture_is_runtime_error(self, tmp_path, write_config):
        out = tmp_path / "out"
        assert main(["run", write_config(TOY_GRID), "--out", str(out)]) == EXIT_OK
        assert main(["summarize", str(out)]) == EXIT_RUNTIME

    def test_bad_targets(self, tmp_path, write_config):
        out = tmp_path / "out"
        main(["run", write_config(QUAD_BALL), "--out", str(out)])
        assert main(["summarize", str(out), "--targets", "abc"]) == EXIT_VALIDATION

    def test_missing_traces(self, tmp_path):
        assert main(["summarize", str(tmp_path)]) == EXIT_RUNTIME


class TestProbeCommand:
    def test_prints_estimate(self, tmp_path, write_config, capsys):
        assert main(["probe-L", write_config(QUAD_BALL), "--out", str(tmp_path)]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        # Hessiana do lagrangiano de quad_ball: (1 + 2y) I, com y = ȳ = 10
        assert payload["L_hat"] == pytest.approx(21.0, rel=1e-2)
        assert payload["queries"] > 0


class TestOracleHStarCommand:
    def test_writes_fixture_used_by_run(self, tmp_path, write_config, capsys):
        out = tmp_path / "out"
        small = QUAD_BALL.replace("dim = 6", "dim = 4").replace("block_size = 3", "block_size = 2")
        config = write_config(small + '\n[hstar]\nbudget_factor = 2\n')
        assert main(["oracle-hstar", config, "--out", str(out)]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert payload["h_star"] == pytest.approx(0.5, rel=1e-6)
        stored = json.loads((out / "hstar.json").read_text(encoding="utf-8"))
        assert stored["h_star"] == payload["h_star"]
        assert stored["dim"] == 4

        assert main(["run", config, "--out", str(out)]) == EXIT_OK
        df = pd.read_csv(out / "traces.csv")
        assert df["rel_error"].notna().all()

    def test_invalid_config(self, tmp_path, write_config):
        bad = QUAD_BALL.replace('kind = "quad_ball"', 'kind = "nope"')
        assert main(["oracle-hstar", write_config(bad), "--out", str(tmp_path)]) == EXIT_VALIDATION
