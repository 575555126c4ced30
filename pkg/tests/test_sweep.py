"""Tests for the sweep pipeline: evaluation, aggregation, CSV and ledger."""

from __future__ import annotations

import json
import math
from pathlib import Path

import pytest

import src.orchestration.sweep_runner as sweep_runner
from src.audit.run_ledger import RunLedger, config_hash
from src.config import get_settings
from src.experiments.reference import compare_to_reference, parse_reference
from src.experiments.sweep_config import parse_sweep_config
from src.models.analysis import StretchReport
from src.models.routing import RoutingStrategy
from src.models.sweep import SweepConfig, SweepStage
from src.orchestration.sweep_runner import (
    SweepIntegrityError,
    SweepRunner,
    evaluate_instance,
    run_sweep,
)
from src.reporting.csv_reporter import (
    SweepCsvError,
    format_sweep_csv,
    parse_sweep_csv,
    read_sweep_csv,
)

_DATA = Path(__file__).resolve().parent.parent / "data"


def _config(**overrides) -> SweepConfig:
    fields = dict(
        lambda_values=[0.5, 0.75, 1.0],
        theta_values_degrees=[5, 45, 90],
        instances=3,
        points_per_instance=25,
        seed=42,
        strategies=list(RoutingStrategy),
    )
    fields.update(overrides)
    return SweepConfig(**fields)


@pytest.fixture(scope="module")
def small_results():
    return run_sweep(_config())


class TestEvaluation:
    def test_one_sample_per_cell(self):
        config = _config()
        samples = evaluate_instance(config, 0)
        assert len(samples) == len(config.cells())
        assert all(s.failures == 0 for s in samples)
        assert all(s.spanning is not None and s.spanning >= 1.0 for s in samples)

    def test_results_in_theta_lambda_order(self, small_results):
        keys = [(r.theta_degrees, r.lam) for r in small_results]
        assert keys == sorted(keys)
        assert len(small_results) == 9

    def test_no_failures(self, small_results):
        assert sum(r.failures for r in small_results) == 0

    def test_routing_not_shorter_than_spanning(self, small_results):
        for r in small_results:
            for strategy, mean in r.mean_routing_ratio.items():
                if strategy.guarantees_delivery:
                    assert mean >= r.mean_spanning_ratio - 1e-12

    def test_spanning_grows_with_theta(self, small_results):
        by_key = {r.key: r for r in small_results}
        assert by_key[(0.75, 5)].mean_spanning_ratio < by_key[(0.75, 90)].mean_spanning_ratio

    @pytest.mark.parametrize(
        "strategy", [RoutingStrategy.DESTROYER_OF_TARGET, RoutingStrategy.FARTHEST_DESTROYER]
    )
    def test_routing_grows_with_lambda(self, small_results, strategy):
        by_key = {r.key: r for r in small_results}
        assert (
            by_key[(0.5, 45)].mean_routing_ratio[strategy]
            < by_key[(1.0, 45)].mean_routing_ratio[strategy]
        )

    def test_farthest_strategy_reports_every_cell(self, small_results):
        for r in small_results:
            assert math.isfinite(r.mean_routing_ratio[RoutingStrategy.FARTHEST_DESTROYER])

    def test_theta_zero_is_complete(self):
        results = run_sweep(_config(lambda_values=[0.75], theta_values_degrees=[0]))
        assert results[0].mean_spanning_ratio == pytest.approx(1.0, abs=1e-12)
        for strategy in RoutingStrategy:
            assert results[0].mean_routing_ratio[strategy] == pytest.approx(1.0, abs=1e-12)

    def test_strategy_subset(self):
        config = _config(
            lambda_values=[0.75],
            theta_values_degrees=[30],
            strategies=[RoutingStrategy.NEAREST_TO_TARGET],
        )
        (result,) = run_sweep(config)
        assert set(result.mean_routing_ratio) == {RoutingStrategy.NEAREST_TO_TARGET}
        row = format_sweep_csv([result]).splitlines()[1].split(",")
        assert row[4] == "" and row[6] != ""


class TestDeterminism:
    def test_same_seed_same_csv(self, small_results):
        again = run_sweep(_config())
        assert format_sweep_csv(again) == format_sweep_csv(small_results)

    def test_parallel_matches_serial(self, small_results):
        parallel = SweepRunner(workers=2).run(_config())
        assert parallel == small_results

    def test_seed_changes_results(self, small_results):
        other = run_sweep(_config(seed=43))
        assert format_sweep_csv(other) != format_sweep_csv(small_results)


class TestSweepCsv:
    def test_header_and_rows(self, small_results):
        lines = format_sweep_csv(small_results).splitlines()
        assert lines[0].split(",")[:3] == ["lambda", "theta_deg", "mean_spanning"]
        assert lines[1].startswith("0.5,5,")
        assert len(lines) == 10

    def test_reparse_then_self_compare(self, small_results):
        text = format_sweep_csv(small_results)
        parsed = parse_sweep_csv(text)
        assert [r.key for r in parsed] == [r.key for r in small_results]
        report = compare_to_reference(parsed, parse_reference(text), tolerance=0.0)
        assert report.passed
        assert report.cells_compared == 36

    def test_bad_header(self):
        with pytest.raises(SweepCsvError):
            parse_sweep_csv("lam,theta\n0.5,5\n")

    def test_ten_column_header_accepted(self):
        text = (
            "lambda,theta_deg,mean_spanning,ci95_spanning,mean_routing_destroyer,"
            "ci95_routing_destroyer,mean_routing_nearest,ci95_routing_nearest,"
            "max_out_degree,failures\n"
            "0.75,45,1.8,0.1,1.9,0.1,,,6,0\n"
        )
        (result,) = parse_sweep_csv(text)
        assert result.mean_routing_ratio == {RoutingStrategy.DESTROYER_OF_TARGET: 1.9}
        assert result.metric("mean_routing_farthest") is None

    def test_empty_spanning_cell(self, small_results):
        lines = format_sweep_csv(small_results[:1]).splitlines()
        fields = lines[1].split(",")
        fields[2] = ""
        with pytest.raises(SweepCsvError, match="mean_spanning"):
            parse_sweep_csv("\n".join([lines[0], ",".join(fields)]))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_sweep_csv(tmp_path / "none.csv")


class TestSweepRunner:
    def test_progress_stages(self):
        seen: list[tuple[SweepStage, float]] = []
        runner = SweepRunner(on_progress=lambda s: seen.append((s.stage, s.progress)))
        runner.run(_config(instances=2))
        stages = [stage for stage, _ in seen]
        assert stages[0] == SweepStage.GENERATING
        assert stages[-1] == SweepStage.COMPLETED
        assert SweepStage.EVALUATING in stages and SweepStage.AGGREGATING in stages
        progress = [p for _, p in seen]
        assert progress == sorted(progress)
        assert runner.state.instances_done == 2

    def test_run_to_csv_records_ledger_and_summary(self, tmp_path):
        config = _config(instances=2)
        csv_path = tmp_path / "out" / "small.csv"
        runner = SweepRunner()
        results = runner.run_to_csv(config, csv_path, summary_json=True)

        assert read_sweep_csv(csv_path) == parse_sweep_csv(format_sweep_csv(results))
        rows = RunLedger(get_settings().ledger_db_path).query_by_config_hash(config_hash(config))
        assert len(rows) == 1
        assert rows[0]["csv_path"] == str(csv_path)

        summary = json.loads((tmp_path / "out" / "small.json").read_text(encoding="utf-8"))
        assert summary["run_id"] == rows[0]["run_id"]
        assert summary["state"]["stage"] == "completed"
        assert len(summary["results"]) == 9

    def test_run_to_csv_progress_is_monotone(self, tmp_path):
        seen: list[tuple[SweepStage, float]] = []
        runner = SweepRunner(on_progress=lambda s: seen.append((s.stage, s.progress)))
        runner.run_to_csv(_config(instances=2), tmp_path / "p.csv")
        stages = [stage for stage, _ in seen]
        assert stages.count(SweepStage.COMPLETED) == 1
        assert stages[-1] == SweepStage.COMPLETED
        assert stages[-2] == SweepStage.REPORTING
        progress = [p for _, p in seen]
        assert progress == sorted(progress)
        assert "reporting" in runner.state.stage_times

    def test_points_generated_before_evaluation(self, monkeypatch):
        runner = SweepRunner()
        stages_at_generation: list[SweepStage] = []
        real = sweep_runner.generate_points

        def recording(*args, **kwargs):
            stages_at_generation.append(runner.state.stage)
            return real(*args, **kwargs)

        monkeypatch.setattr(sweep_runner, "generate_points", recording)
        runner.run(_config(instances=3))
        assert stages_at_generation == [SweepStage.GENERATING] * 3

    def test_ledger_disabled(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LEDGER_ENABLED", "false")
        SweepRunner().run_to_csv(_config(instances=1), tmp_path / "a.csv")
        assert not Path(get_settings().ledger_db_path).exists()


class TestViolations:
    @pytest.fixture
    def inflated_degree(self, monkeypatch):
        monkeypatch.setattr(sweep_runner, "max_out_degree", lambda graph: 99)

    def test_abort_raises(self, inflated_degree):
        config = _config(lambda_values=[0.75], theta_values_degrees=[30])
        runner = SweepRunner()
        with pytest.raises(SweepIntegrityError, match="out-degree"):
            runner.run(config)
        assert runner.state.stage == SweepStage.FAILED
        assert runner.state.errors

    def test_count_instead_of_abort(self, inflated_degree):
        config = _config(
            lambda_values=[0.75], theta_values_degrees=[30], abort_on_violation=False
        )
        (result,) = run_sweep(config)
        assert result.failures == config.instances
        assert result.max_out_degree_observed == 99
        assert math.isfinite(result.mean_spanning_ratio)

    def test_unbounded_cell_not_checked(self, inflated_degree):
        # θ = 0 has no out-degree bound
        (result,) = run_sweep(_config(lambda_values=[0.75], theta_values_degrees=[0]))
        assert result.failures == 0

    @pytest.fixture
    def undelivered(self, monkeypatch):
        report = StretchReport(
            ratio=1.5,
            witness_pair=(0, 1),
            all_reachable=False,
            unreachable_pairs=4,
            first_unreachable=(2, 3),
        )
        monkeypatch.setattr(sweep_runner, "routing_ratio", lambda graph, params, strategy: report)

    def test_undelivered_farthest_route_is_not_a_violation(self, undelivered):
        config = _config(
            lambda_values=[0.75],
            theta_values_degrees=[30],
            strategies=[RoutingStrategy.FARTHEST_DESTROYER],
        )
        (result,) = run_sweep(config)
        assert result.failures == 0
        assert result.mean_routing_ratio[RoutingStrategy.FARTHEST_DESTROYER] == pytest.approx(1.5)

    def test_undelivered_destroyer_route_is_a_violation(self, undelivered):
        config = _config(
            lambda_values=[0.75],
            theta_values_degrees=[30],
            strategies=[RoutingStrategy.DESTROYER_OF_TARGET],
            abort_on_violation=False,
        )
        (result,) = run_sweep(config)
        assert result.failures == config.instances
        assert math.isnan(result.mean_routing_ratio[RoutingStrategy.DESTROYER_OF_TARGET])


@pytest.mark.slow
class TestReferenceTables:
    """Corner cells against the reference means."""

    def _check(self, cfg: str, spanning_tol: float, routing_tol: float) -> None:
        results = run_sweep(parse_sweep_config(_DATA / "sweeps" / cfg))
        assert sum(r.failures for r in results) == 0
        spanning = compare_to_reference(
            results, _DATA / "reference" / "mean_spanning_ratio.csv", spanning_tol
        )
        routing = compare_to_reference(
            results,
            _DATA / "reference" / "mean_routing_ratio.csv",
            routing_tol,
            metric="mean_routing_farthest",
        )
        assert spanning.passed, spanning.worst_cells
        assert routing.passed, routing.worst_cells

    def test_corner_cells(self):
        self._check("corner_cells.cfg", 0.1, 0.2)

    def test_corner_cells_reduced(self):
        self._check("corner_cells_reduced.cfg", 0.15, 0.2)
