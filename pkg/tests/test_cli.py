"""命令行"""
import json
import logging
import os

import pytest
import yaml

from const.const import ExitCode
from main import main
from utils.config_yaml import ConfigYaml
from utils.logger import Logger

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config")
FAST = ["--kmin", "3", "--frontier-limit", "64"]


def run(*args):
    return main(["--path", CONFIG_DIR, "--log-level", "WARNING", *args])


def write_config(folder, **sections):
    """临时配置目录 (base.yaml + custom-default.yaml)"""
    folder.mkdir(parents=True, exist_ok=True)
    (folder / "base.yaml").write_text(yaml.safe_dump(sections))
    (folder / "custom-default.yaml").write_text(yaml.safe_dump({'solver': {'threads': 1}}))
    return str(folder)


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "sk10.txt"
    assert run("generate", "--class", "sk", "--n", "10", "--seed", "3", "--out", str(path)) == ExitCode.Ok
    return path


class TestGenerate:
    def test_writes_sparse_file(self, instance_file):
        lines = instance_file.read_text().splitlines()
        assert lines[0] == "10 45"
        assert len(lines) == 46

    def test_stdout(self, capsys):
        assert run("generate", "--class", "grid2d", "--n", "4", "--seed", "0") == ExitCode.Ok
        assert capsys.readouterr().out.splitlines()[0] == "4 4"


class TestSolve:
    def test_json_report(self, instance_file, capsys):
        code = run("solve", str(instance_file), "--kind", "ising", "--json", *FAST)
        report = json.loads(capsys.readouterr().out)
        assert code == ExitCode.Ok
        assert report["status"] == "optimal"
        assert len(report["assignment"]["spins"]) == 10
        assert report["dual"] == report["optimum"]

    def test_summary_and_order(self, instance_file, capsys):
        assert run("solve", str(instance_file), "--kind", "ising", "--dump-order", *FAST) == ExitCode.Ok
        out = capsys.readouterr().out
        assert "optimal" in out
        order = [line for line in out.splitlines() if line.startswith("order:")][0]
        assert sorted(int(v) for v in order.split()[1:]) == list(range(1, 11))

    def test_invalid_threads(self, instance_file):
        assert run("solve", str(instance_file), "--kind", "ising", "--threads", "3") == ExitCode.Error

    def test_timeout_exit_code(self, tmp_path):
        path = tmp_path / "sk22.txt"
        run("generate", "--class", "sk", "--n", "22", "--seed", "0", "--out", str(path))
        assert run("solve", str(path), "--kind", "ising", "--time-limit", "0.000001") == ExitCode.Timeout

    def test_parse_error(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 1\n1 5 1\n")
        assert run("solve", str(path)) == ExitCode.Error

    def test_missing_file(self, tmp_path):
        assert run("solve", str(tmp_path / "nope.txt")) == ExitCode.Error

    def test_qubo_defaults_to_minimisation(self, tmp_path, capsys):
        path = tmp_path / "q.txt"
        path.write_text("2 3\n1 1 -1\n1 2 2\n2 2 -1\n")
        assert run("solve", str(path), "--json") == ExitCode.Ok
        report = json.loads(capsys.readouterr().out)
        assert report["sense"] == "min"
        assert report["optimum"] == -1
        assert run("solve", str(path), "--json", "--sense", "max") == ExitCode.Ok
        report = json.loads(capsys.readouterr().out)
        assert report["sense"] == "max"
        assert report["optimum"] == 0


class TestConfigFile:
    def test_instance_dir_resolves_bare_names(self, tmp_path, capsys):
        folder = tmp_path / "instances"
        folder.mkdir()
        (folder / "ring.txt").write_text("4 4\n1 2 1\n2 3 1\n3 4 1\n1 4 1\n")
        path = write_config(tmp_path / "cfg", instance_dir=str(folder), log={'level': 'WARNING', 'log_dir': ""})
        code = main(["--path", path, "solve", "ring.txt", "--kind", "maxcut", "--json", *FAST])
        assert code == ExitCode.Ok
        assert json.loads(capsys.readouterr().out)["optimum"] == 4

    def test_log_dir_from_config(self, tmp_path, monkeypatch, instance_file):
        monkeypatch.delenv("SPINBOUND_LOG_DIR", raising=False)
        logs = tmp_path / "logs"
        path = write_config(tmp_path / "cfg", log={'level': 'INFO', 'log_dir': str(logs)})
        try:
            assert main(["--path", path, "solve", str(instance_file), "--kind", "ising", *FAST]) == ExitCode.Ok
        finally:
            Logger.configure("WARNING", "")
        files = list(logs.glob("spinbound_*.log"))
        assert len(files) == 1
        assert "Solving" in files[0].read_text()

    def test_env_overrides_log_dir(self, tmp_path, monkeypatch):
        path = write_config(tmp_path / "cfg", log={'log_dir': str(tmp_path / "yaml-logs")})
        monkeypatch.setenv("SPINBOUND_LOG_DIR", str(tmp_path / "env-logs"))
        ConfigYaml.reset()
        assert ConfigYaml(path).get('log.log_dir') == str(tmp_path / "env-logs")
        monkeypatch.delenv("SPINBOUND_LOG_DIR")
        ConfigYaml.reset()
        assert ConfigYaml(path).get('log.log_dir') == str(tmp_path / "yaml-logs")
        ConfigYaml.reset()

    def test_configure_swaps_file_handler(self, tmp_path):
        try:
            Logger.configure("INFO", str(tmp_path / "a"))
            Logger.configure("INFO", str(tmp_path / "b"))
            Logger.get_logger().info("written to the second directory")
        finally:
            Logger.configure("WARNING", "")
        assert list((tmp_path / "a").glob("*.log"))[0].read_text() == ""
        assert "second directory" in list((tmp_path / "b").glob("*.log"))[0].read_text()
        assert not any(isinstance(h, logging.FileHandler) for h in Logger.get_logger().handlers)


class TestVerify:
    def test_agrees_with_brute_force(self, instance_file, capsys):
        assert run("verify", str(instance_file), "--kind", "ising", "--threads", "2", *FAST) == ExitCode.Ok
        assert "verified" in capsys.readouterr().out

    def test_maxcut(self, tmp_path, capsys):
        path = tmp_path / "c5.txt"
        path.write_text("5 5\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n1 5 1\n")
        assert run("verify", str(path), "--kind", "maxcut") == ExitCode.Ok
        assert "brute force: 4" in capsys.readouterr().out


class TestConvert:
    def test_qubo_to_ising(self, tmp_path):
        source = tmp_path / "q.txt"
        source.write_text("2 3\n1 1 -1\n1 2 2\n2 2 -1\n")
        target = tmp_path / "q.ising"
        assert run("convert", str(source), "--out", str(target)) == ExitCode.Ok
        text = target.read_text()
        # x = (1 - s) / 2：-x1 + 2 x1 x2 - x2 = 0.5 s1 s2 - 0.5
        assert text.splitlines() == ["# offset -0.5", "2 1", "1 2 0.5"]

    def test_json(self, tmp_path, capsys):
        source = tmp_path / "g.txt"
        source.write_text("3 2\n1 2 1\n2 3 2\n")
        assert run("convert", str(source), "--kind", "maxcut", "--to", "json") == ExitCode.Ok
        data = json.loads(capsys.readouterr().out)
        assert data["n"] == 3
        assert data["couplings"] == [[1, 2, 1], [2, 3, 2]]


class TestBench:
    def test_empty_manifest(self, tmp_path):
        manifest = tmp_path / "empty.yaml"
        manifest.write_text(yaml.safe_dump({'instances': []}))
        csv = tmp_path / "out.csv"
        code = run("bench", str(manifest), "--csv", str(csv), "--json", str(tmp_path / "out.json"))
        assert code == ExitCode.Ok
        assert csv.read_text().startswith("name,n,class,optimum")

    def test_generated_instances_and_fit(self, tmp_path, capsys):
        manifest = tmp_path / "sk.yaml"
        manifest.write_text(yaml.safe_dump({
            'solver': {'k_min': 3, 'frontier_limit': 64},
            'instances': [{'generate': {'class': 'sk', 'n': [8, 10], 'seeds': [0, 1]}}],
        }))
        csv = tmp_path / "sk.csv"
        code = run("bench", str(manifest), "--csv", str(csv), "--json", str(tmp_path / "sk.json"), "--fit-exponent")
        assert code == ExitCode.Ok
        assert len(csv.read_text().splitlines()) == 5
        assert "fitted exponent" in capsys.readouterr().out

    @pytest.mark.parametrize("text", [yaml.safe_dump({'instances': [{'generate': {'n': 8}}]}),
                                      yaml.safe_dump({'instances': [{'generate': {'class': 'ising', 'n': 8}}]}),
                                      "instances: [oops\n"])
    def test_malformed_manifest(self, tmp_path, text):
        manifest = tmp_path / "bad.yaml"
        manifest.write_text(text)
        assert run("bench", str(manifest), "--csv", str(tmp_path / "out.csv")) == ExitCode.Error
        assert not (tmp_path / "out.csv").exists()
