"""Tests for the run ledger (SQLite-backed)."""

from __future__ import annotations

import json

import pytest

from src.audit.run_ledger import RunLedger, config_hash
from src.models.routing import RoutingStrategy
from src.models.sweep import SweepConfig, SweepResult


@pytest.fixture
def ledger(tmp_path) -> RunLedger:
    return RunLedger(tmp_path / "ledger" / "test_runs.db")


@pytest.fixture
def sample_config() -> SweepConfig:
    return SweepConfig(
        lambda_values=[0.75],
        theta_values_degrees=[30],
        instances=2,
        points_per_instance=10,
        seed=5,
    )


@pytest.fixture
def sample_results() -> list[SweepResult]:
    return [
        SweepResult(
            lam=0.75,
            theta_degrees=30,
            mean_spanning_ratio=1.42,
            mean_routing_ratio={RoutingStrategy.DESTROYER_OF_TARGET: 1.9},
            max_out_degree_observed=5,
        )
    ]


class TestConfigHash:
    def test_stable(self, sample_config):
        assert config_hash(sample_config) == config_hash(sample_config.model_copy())
        assert len(config_hash(sample_config)) == 16

    def test_changes_with_seed(self, sample_config):
        other = sample_config.model_copy(update={"seed": 6})
        assert config_hash(other) != config_hash(sample_config)


class TestRunLedger:
    def test_init_creates_parent_dirs(self, tmp_path):
        db_path = tmp_path / "nested" / "deep" / "runs.db"
        RunLedger(db_path)
        assert db_path.exists()

    def test_log_run(self, ledger, sample_config, sample_results):
        run_id = ledger.log_run(sample_config, sample_results, 1.5, csv_path="out.csv")
        records = ledger.query_by_config_hash(config_hash(sample_config))
        assert len(records) == 1

        record = records[0]
        assert record["run_id"] == run_id
        assert record["seed"] == 5
        assert record["cells"] == 1
        assert record["instances"] == 2
        assert record["points"] == 10
        assert record["csv_path"] == "out.csv"
        assert record["elapsed"] == 1.5

    def test_query_recent(self, ledger, sample_config, sample_results):
        for seed in range(5):
            config = sample_config.model_copy(update={"seed": seed})
            ledger.log_run(config, sample_results, 0.1)

        assert len(ledger.query_recent(limit=3)) == 3
        assert len(ledger.query_recent()) == 5

    def test_query_by_config_hash(self, ledger, sample_config, sample_results):
        other = sample_config.model_copy(update={"seed": 99})
        ledger.log_run(sample_config, sample_results, 0.1)
        ledger.log_run(other, sample_results, 0.1)
        ledger.log_run(sample_config, sample_results, 0.1)

        assert len(ledger.query_by_config_hash(config_hash(sample_config))) == 2
        assert len(ledger.query_by_config_hash(config_hash(other))) == 1

    def test_empty_query(self, ledger):
        assert ledger.query_by_config_hash("0" * 16) == []

    def test_result_json_roundtrip(self, ledger, sample_config, sample_results):
        ledger.log_run(sample_config, sample_results, 0.1)
        parsed = json.loads(ledger.query_recent()[0]["result_json"])
        assert parsed[0]["mean_spanning_ratio"] == 1.42
        assert parsed[0]["mean_routing_ratio"] == {"destroyer": 1.9}
