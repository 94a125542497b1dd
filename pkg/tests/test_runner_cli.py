import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from flightlab.cli import main
from flightlab.drones import load_builtin_config
from flightlab.runner import RunSpec, interquartile_mean, run


class TestRunner:
    def test_zero_policy_hover_crashes(self):
        summaries = run(RunSpec(env="PyFlyt/QuadX-Hover-v0", seed=0, policy="zero"))
        assert len(summaries) == 1
        assert summaries[0].outcome == "crashed"
        assert summaries[0].episode_return <= -100.0

    def test_episode_seeding_is_seed_plus_k(self):
        summaries = run(RunSpec(env="PyFlyt/QuadX-Hover-v0", seed=10, episodes=3, policy="random"))
        assert [s.seed for s in summaries] == [10, 11, 12]

    def test_byte_identical_trajectories(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            run(RunSpec(env="PyFlyt/QuadX-Waypoints-v0", seed=5, episodes=2,
                        policy="random", out=path))
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_csv_line_count_is_steps_plus_header(self, tmp_path):
        path = tmp_path / "log.csv"
        summaries = run(RunSpec(env="PyFlyt/QuadX-Hover-v0", seed=2, episodes=3,
                                policy="random", out=path))
        lines = path.read_text().splitlines()
        assert len(lines) == sum(s.steps for s in summaries) + 1

    def test_jsonl_records_match_summary(self, tmp_path):
        path = tmp_path / "log.jsonl"
        summaries = run(RunSpec(env="PyFlyt/QuadX-Hover-v0", seed=2, episodes=2,
                                policy="random", out=path, log_format="jsonl"))
        records = [json.loads(line) for line in path.read_text().splitlines()]
        assert len(records) == sum(s.steps for s in summaries)
        by_episode = {}
        for record in records:
            by_episode.setdefault(record["episode"], 0.0)
            by_episode[record["episode"]] += record["reward"]
        for summary in summaries:
            assert by_episode[summary.index] == pytest.approx(summary.episode_return)

    def test_scripted_pid_completes_waypoints(self):
        summaries = run(RunSpec(env="PyFlyt/QuadX-Waypoints-v0", seed=0, episodes=2,
                                policy="scripted-pid", sparse=True))
        for summary in summaries:
            assert summary.outcome == "goal"
            assert summary.episode_return == 500.0

    def test_scripted_pid_rejected_outside_quadx(self):
        with pytest.raises(ValueError, match="QuadX"):
            run(RunSpec(env="PyFlyt/Rocket-Landing-v0", policy="scripted-pid"))

    def test_unknown_env_rejected(self):
        with pytest.raises(ValueError, match="valid names"):
            run(RunSpec(env="NopeEnv"))

    def test_iqm_trims_quartiles(self):
        assert interquartile_mean([0.0, 100.0]) == 50.0
        assert interquartile_mean([-1000.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 1000.0]) == pytest.approx(3.5)

    def test_diverged_episode_reported(self, monkeypatch):
        from flightlab.rigidbody import SimulationDiverged
        from flightlab.runner import LocalEnvHandle

        def explode(self, action, override=None):
            raise SimulationDiverged("drone 0 (quadx_crazyflie): test blow-up")

        monkeypatch.setattr(LocalEnvHandle, "step", explode)
        summaries = run(RunSpec(env="PyFlyt/QuadX-Hover-v0", episodes=2, policy="zero"))
        assert [s.outcome for s in summaries] == ["diverged", "diverged"]


class TestCli:
    def invoke(self, *args):
        return CliRunner().invoke(main, list(args))

    def test_run_exit_zero_and_summary_lines(self, tmp_path):
        out = tmp_path / "t.csv"
        result = self.invoke(
            "run", "--env", "PyFlyt/QuadX-Hover-v0", "--seed", "1",
            "--episodes", "2", "--policy", "zero", "--out", str(out),
        )
        assert result.exit_code == 0, result.output
        assert out.exists()
        lines = [l for l in result.output.splitlines() if l.startswith("episode ")]
        assert len(lines) == 2
        assert "IQM return" in result.output

    def test_unknown_env_is_usage_error(self):
        result = self.invoke("run", "--env", "PyFlyt/Bogus-v0")
        assert result.exit_code == 2
        assert "valid names" in result.output

    def test_scripted_policy_on_rocket_is_usage_error(self):
        result = self.invoke("run", "--env", "PyFlyt/Rocket-Landing-v0",
                             "--policy", "scripted-pid")
        assert result.exit_code == 2

    def test_waypoint_and_radius_options(self, tmp_path):
        result = self.invoke(
            "run", "--env", "PyFlyt/QuadX-Waypoints-v0", "--policy", "scripted-pid",
            "--sparse", "--waypoints", "2", "--goal-radius", "0.3",
        )
        assert result.exit_code == 0, result.output
        assert "return     200.0000" in result.output

    def test_validate_shipped_config_ok(self, tmp_path):
        from flightlab.drones import builtin_config_path

        result = self.invoke("validate", str(builtin_config_path("quadx_crazyflie")))
        assert result.exit_code == 0
        assert "ok" in result.output

    def test_validate_negative_mass_names_field(self, tmp_path):
        config = load_builtin_config("quadx_generic")
        config.mass = -2.0
        path = tmp_path / "bad.yaml"
        path.write_text(config.dumps(), encoding="utf-8")
        result = self.invoke("validate", str(path))
        assert result.exit_code == 1
        assert "mass" in result.output
        assert result.output.count("violation:") == 1

    def test_validate_bad_axis_names_field(self, tmp_path):
        config = load_builtin_config("quadx_generic")
        config.motors[1].axis = np.array([0.0, 0.0, 3.0])
        path = tmp_path / "bad_axis.yaml"
        path.write_text(config.dumps(), encoding="utf-8")
        result = self.invoke("validate", str(path))
        assert result.exit_code == 1
        assert "motors[1].axis" in result.output

    def test_validate_missing_file_fails(self):
        result = self.invoke("validate", "/nonexistent/vehicle.yaml")
        assert result.exit_code == 1
        assert "no such file" in result.output

    def test_divergence_exits_nonzero(self, monkeypatch):
        from flightlab.rigidbody import SimulationDiverged
        from flightlab.runner import LocalEnvHandle

        def explode(self, action, override=None):
            raise SimulationDiverged("boom")

        monkeypatch.setattr(LocalEnvHandle, "step", explode)
        result = self.invoke("run", "--env", "PyFlyt/QuadX-Hover-v0", "--policy", "zero")
        assert result.exit_code == 1
        assert "diverged" in result.output
