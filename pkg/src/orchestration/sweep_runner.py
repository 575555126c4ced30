"""Parameter sweep pipeline: Generate → Evaluate → Aggregate → Report.

Instance ``i`` always draws its points from PRNG stream ``i`` of the sweep
seed, so every (λ, θ) cell sees the same point sets and parallel runs match
serial runs exactly.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, NamedTuple

from src.analysis.stretch import max_out_degree, spanning_ratio
from src.audit.run_ledger import RunLedger
from src.config import Settings, get_settings
from src.experiments.points import generate_points
from src.graphs.builders import build_glt
from src.logger import get_logger
from src.models.geometry import Point2D, SpannerParams
from src.models.routing import RoutingStrategy
from src.models.sweep import (
    SweepConfig,
    SweepResult,
    SweepStage,
    SweepState,
    SweepSummary,
    ci95_half_width,
)
from src.reporting.csv_reporter import write_sweep_csv
from src.reporting.json_reporter import save_json_report
from src.routing.router import routing_ratio

logger = get_logger(__name__)

# Relative slack for comparing a measured ratio against a closed-form bound.
_BOUND_SLACK = 1e-12


class SweepIntegrityError(RuntimeError):
    """A proven property failed on a sweep instance (an implementation bug)."""


class CellSample(NamedTuple):
    """Measurements of one instance in one cell; None marks an excluded value."""

    spanning: float | None
    routing: dict[RoutingStrategy, float | None]
    out_degree: int
    failures: int


def _violation(config: SweepConfig, message: str, **context: object) -> int:
    if config.abort_on_violation:
        logger.error("Sweep integrity violation", message=message, **context)
        raise SweepIntegrityError(f"{message} ({context})")
    logger.warning("Sweep integrity violation counted", message=message, **context)
    return 1


def evaluate_cell(
    config: SweepConfig, params: SpannerParams, instance: int, points: list[Point2D]
) -> CellSample:
    graph = build_glt(points, params)
    where = {"lambda": params.lam, "theta_deg": params.theta_degrees, "instance": instance}
    failures = 0

    span = spanning_ratio(graph)
    spanning: float | None = span.ratio
    if not span.all_reachable:
        failures += _violation(
            config, "GLT graph has unreachable pairs", pair=span.first_unreachable, **where
        )
        spanning = None
    elif params.has_stretch_guarantee and span.ratio > params.stretch_bound * (1 + _BOUND_SLACK):
        failures += _violation(
            config,
            "spanning ratio exceeds stretch bound",
            ratio=span.ratio,
            bound=params.stretch_bound,
            pair=span.witness_pair,
            **where,
        )

    degree = max_out_degree(graph)
    bound = params.out_degree_bound
    if bound is not None and degree > bound:
        failures += _violation(
            config, "out-degree exceeds bound", degree=degree, bound=bound, **where
        )

    routing: dict[RoutingStrategy, float | None] = {}
    for strategy in config.strategies:
        report = routing_ratio(graph, params, strategy)
        if report.all_reachable:
            routing[strategy] = report.ratio
        elif not strategy.guarantees_delivery:
            # ratio over the delivered pairs only
            logger.warning(
                "Routing left pairs undelivered",
                strategy=strategy.value,
                undelivered=report.unreachable_pairs,
                pair=report.first_unreachable,
                **where,
            )
            routing[strategy] = report.ratio if report.witness_pair is not None else None
        else:
            failures += _violation(
                config,
                "routing failed to deliver",
                strategy=strategy.value,
                pair=report.first_unreachable,
                **where,
            )
            routing[strategy] = None

    return CellSample(spanning=spanning, routing=routing, out_degree=degree, failures=failures)


def evaluate_instance(
    config: SweepConfig, instance: int, points: list[Point2D] | None = None
) -> list[CellSample]:
    """All cells of one instance, in ``config.cells()`` order."""
    if points is None:
        points = generate_points(config.points_per_instance, config.seed, stream=instance)
    return [evaluate_cell(config, params, instance, points) for params in config.cells()]


def _evaluate_job(job: tuple[SweepConfig, int, list[Point2D]]) -> list[CellSample]:
    return evaluate_instance(*job)


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values) if values else math.nan


def aggregate(config: SweepConfig, per_instance: list[list[CellSample]]) -> list[SweepResult]:
    results: list[SweepResult] = []
    for c, (lam, theta) in enumerate(config.cell_keys()):
        samples = [inst[c] for inst in per_instance]
        spanning = [s.spanning for s in samples if s.spanning is not None]
        means: dict[RoutingStrategy, float] = {}
        cis: dict[RoutingStrategy, float] = {}
        for strategy in config.strategies:
            values = [v for s in samples if (v := s.routing.get(strategy)) is not None]
            means[strategy] = _mean(values)
            cis[strategy] = ci95_half_width(values)
        results.append(
            SweepResult(
                lam=lam,
                theta_degrees=theta,
                mean_spanning_ratio=_mean(spanning),
                ci95_spanning=ci95_half_width(spanning),
                mean_routing_ratio=means,
                ci95_routing=cis,
                max_out_degree_observed=max(s.out_degree for s in samples),
                failures=sum(s.failures for s in samples),
            )
        )
    return results


class SweepRunner:
    """Runs a sweep stage by stage, reporting progress through ``on_progress``."""

    def __init__(
        self,
        settings: Settings | None = None,
        on_progress: Callable[[SweepState], None] | None = None,
        workers: int | None = None,
    ) -> None:
        self._settings = settings or get_settings()
        self._on_progress = on_progress
        self._workers = workers or self._settings.sweep_workers
        self.state = SweepState()

    def _emit(self, stage: SweepStage, progress: float) -> None:
        self.state.stage = stage
        self.state.progress = progress
        if self._on_progress:
            self._on_progress(self.state)

    def _instance_done(self) -> None:
        self.state.instances_done += 1
        self._emit(
            SweepStage.EVALUATING,
            5 + 85 * self.state.instances_done / max(self.state.instances_total, 1),
        )

    def run(self, config: SweepConfig) -> list[SweepResult]:
        """Evaluate every cell over every instance and aggregate per cell."""
        results = self._run(config)
        self._complete(results)
        return results

    def _run(self, config: SweepConfig) -> list[SweepResult]:
        self.state = SweepState(instances_total=config.instances)
        cells = config.cells()
        logger.info(
            "Sweep started",
            cells=len(cells),
            instances=config.instances,
            points=config.points_per_instance,
            seed=config.seed,
            workers=self._workers,
        )
        try:
            self._emit(SweepStage.GENERATING, 0)
            t0 = time.time()
            jobs = [
                (config, i, generate_points(config.points_per_instance, config.seed, stream=i))
                for i in range(config.instances)
            ]
            self.state.stage_times["generating"] = time.time() - t0

            self._emit(SweepStage.EVALUATING, 5)
            t0 = time.time()
            per_instance: list[list[CellSample]] = []
            if self._workers > 1 and config.instances > 1:
                with ProcessPoolExecutor(max_workers=self._workers) as pool:
                    for samples in pool.map(_evaluate_job, jobs):
                        per_instance.append(samples)
                        self._instance_done()
            else:
                for job in jobs:
                    per_instance.append(_evaluate_job(job))
                    self._instance_done()
            self.state.stage_times["evaluating"] = time.time() - t0

            self._emit(SweepStage.AGGREGATING, 90)
            t0 = time.time()
            results = aggregate(config, per_instance)
            self.state.stage_times["aggregating"] = time.time() - t0

            for r in results:
                logger.debug(
                    "Cell aggregated",
                    lam=r.lam,
                    theta_deg=r.theta_degrees,
                    mean_spanning=r.mean_spanning_ratio,
                    failures=r.failures,
                )
            return results

        except Exception as exc:
            self._fail(exc)
            raise

    def _fail(self, exc: Exception) -> None:
        self.state.errors.append(str(exc))
        self._emit(SweepStage.FAILED, self.state.progress)
        logger.error("Sweep failed", error=str(exc), stage=self.state.stage.value)

    def _complete(self, results: list[SweepResult]) -> None:
        self._emit(SweepStage.COMPLETED, 100)
        logger.info(
            "Sweep complete",
            cells=len(results),
            failures=sum(r.failures for r in results),
            elapsed=round(sum(self.state.stage_times.values()), 2),
        )

    def run_to_csv(
        self,
        config: SweepConfig,
        csv_path: str | Path,
        summary_json: bool = False,
    ) -> list[SweepResult]:
        """Run, write the CSV, optionally a JSON summary, and record the run."""
        start = time.time()
        results = self._run(config)

        try:
            self._emit(SweepStage.REPORTING, 95)
            t0 = time.time()
            path = write_sweep_csv(results, csv_path)
            self.state.csv_path = str(path)

            run_id: str | None = None
            if self._settings.ledger_enabled:
                ledger = RunLedger(self._settings.ledger_db_path)
                run_id = ledger.log_run(config, results, time.time() - start, csv_path=path)
            self.state.stage_times["reporting"] = time.time() - t0
        except Exception as exc:
            self._fail(exc)
            raise

        self._complete(results)
        if summary_json:
            summary = SweepSummary(config=config, results=results, state=self.state, run_id=run_id)
            save_json_report(summary, path.parent, path.stem)
        return results


def run_sweep(config: SweepConfig, workers: int | None = None) -> list[SweepResult]:
    """Results per (λ, θ) cell, in (θ, λ) order."""
    return SweepRunner(workers=workers).run(config)
