"""基准测试清单与结果"""
import json
import os

import pandas as pd
import pytest
import yaml

from bench.bench import (BENCH_COLUMNS, BenchEntry, BenchRow, ManifestError, fit_exponent, load_manifest,
                         median_nodes, parse_manifest, run_bench, run_entry, write_csv, write_json)
from const.const import SolveStatus
from primal.anneal import AnnealSchedule
from solver.config import SolverConfig

CFG = SolverConfig(k_min=3, frontier_limit=64, anneal_full=AnnealSchedule(50, 1))
CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config")


class TestManifest:
    def test_generate_expands_sizes_and_seeds(self):
        entries = parse_manifest({'instances': [{'generate': {'class': 'sk', 'n': [8, 10], 'seeds': [0, 1, 2]}}]})
        assert len(entries) == 6
        assert entries[0].name == "sk-n8-s0"
        assert entries[-1].generate == {'class': 'sk', 'n': 10, 'seed': 2, 'density': 1.0}

    def test_path_entries(self, tmp_path):
        (tmp_path / "g.txt").write_text("3 2\n1 2 1\n2 3 1\n")
        manifest = tmp_path / "bench.yaml"
        manifest.write_text(yaml.safe_dump({'solver': {'k_min': 2},
                                            'instances': [{'path': 'g.txt', 'kind': 'maxcut'}]}))
        entries, overrides = load_manifest(str(manifest))
        assert overrides == {'k_min': 2}
        assert entries[0].path == str(tmp_path / "g.txt")
        assert entries[0].sense == "max"

    def test_invalid_entry(self):
        with pytest.raises(ValueError):
            parse_manifest({'instances': [{'generate': {'n': 8}}]})

    @pytest.mark.parametrize("item", [{'generate': {'class': 'spin-glass', 'n': 8}}, "sk",
                                      {'generate': {'class': 'sk', 'n': 'many'}}])
    def test_malformed_entries(self, item):
        with pytest.raises(ManifestError):
            parse_manifest({'instances': [item]})

    def test_malformed_yaml(self, tmp_path):
        manifest = tmp_path / "broken.yaml"
        manifest.write_text("instances: [\n  - generate: {class: sk\n")
        with pytest.raises(ManifestError):
            load_manifest(str(manifest))
        manifest.write_text("- just\n- a list\n")
        with pytest.raises(ManifestError):
            load_manifest(str(manifest))

    def test_sk_scan_manifest(self):
        entries, overrides = load_manifest(os.path.join(CONFIG_DIR, "bench-sk.yaml"))
        assert sorted({entry.generate['n'] for entry in entries}) == [20, 24, 28, 32]
        assert len(entries) == 40
        assert all(entry.cls == "sk" for entry in entries)
        assert overrides['k_min'] == 8

    def test_empty(self):
        assert parse_manifest({}) == []


class TestRun:
    def test_rows(self):
        entries = parse_manifest({'instances': [{'generate': {'class': 'uniform', 'n': [6, 8], 'seeds': [0]}}]})
        rows = run_bench(entries, CFG)
        assert [row.n for row in rows] == [6, 8]
        assert all(row.status == SolveStatus.OPTIMAL.value for row in rows)
        assert all(row.gap == 0.0 and row.nodes > 0 for row in rows)
        assert rows[0].config_hash == rows[1].config_hash

    def test_failure_is_recorded_in_row(self, tmp_path):
        row = run_entry(BenchEntry("missing", "qubo", str(tmp_path / "nope.txt")), CFG)
        assert row.status == SolveStatus.ERROR.value
        assert "FileNotFoundError" in row.error

    def test_parallel_instances(self):
        entries = parse_manifest({'instances': [{'generate': {'class': 'sk', 'n': 6, 'seeds': [0, 1]}}]})
        rows = run_bench(entries, CFG, parallel_instances=2)
        assert [row.name for row in rows] == ["sk-n6-s0", "sk-n6-s1"]

    def test_outputs(self, tmp_path):
        rows = [BenchRow("a", 10, "sk", optimum=-7, dual=-7, gap=0.0, status="optimal", nodes=12)]
        write_csv(rows, str(tmp_path / "out" / "bench.csv"))
        frame = pd.read_csv(tmp_path / "out" / "bench.csv")
        assert list(frame.columns) == BENCH_COLUMNS
        write_json(rows, str(tmp_path / "bench.json"))
        data = json.loads((tmp_path / "bench.json").read_text())
        assert data[0]["class"] == "sk" and data[0]["optimum"] == -7

    def test_empty_csv_has_header(self, tmp_path):
        write_csv([], str(tmp_path / "empty.csv"))
        assert (tmp_path / "empty.csv").read_text().strip() == ",".join(BENCH_COLUMNS)


class TestFit:
    def test_exponent(self):
        rows = [BenchRow(f"r{n}", n, "sk", status="optimal", nodes=2 ** (n // 2 + 1)) for n in (10, 12, 14, 16)]
        fit = fit_exponent(rows)
        assert fit['slope'] == pytest.approx(0.5)
        assert fit['intercept'] == pytest.approx(1.0)
        assert fit['count'] == 4

    def test_needs_two_sizes(self):
        rows = [BenchRow("r", 10, "sk", status="optimal", nodes=100)]
        with pytest.raises(ValueError):
            fit_exponent(rows)

    def test_other_classes_and_failures_are_ignored(self):
        rows = [BenchRow("a", 10, "sk", status="optimal", nodes=64),
                BenchRow("b", 12, "sk", status="optimal", nodes=128),
                BenchRow("c", 14, "sk", status="timeout", nodes=10 ** 6),
                BenchRow("d", 16, "uniform", status="optimal", nodes=10 ** 6)]
        assert fit_exponent(rows)['slope'] == pytest.approx(0.5)

    def test_median_nodes(self):
        rows = [BenchRow("a", 10, "sk", status="optimal", nodes=n) for n in (4, 8, 100)]
        assert median_nodes(rows) == {10: 8.0}
