"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error or invalid input.
Results go to stdout, logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from src.analysis.stretch import max_out_degree, spanning_ratio, verify_strong_spanner
from src.audit.run_ledger import RunLedger
from src.config import get_settings
from src.experiments.fixtures import (
    FixtureSearchError,
    hsp_lower_bound_fixture,
    theta_udg_counterexample_fixture,
)
from src.experiments.points import generate_points
from src.experiments.reference import compare_to_reference
from src.experiments.sweep_config import parse_sweep_config
from src.graphs.builders import build_glt, build_hsp, build_theta_graph
from src.graphs.io import (
    format_graph,
    format_points,
    read_graph,
    read_points,
    write_graph,
    write_points,
)
from src.graphs.truncation import intersect_unit_disk
from src.logger import get_logger, setup_logging
from src.models.geometry import Point2D, SpannerParams
from src.models.graph import DirectedGeometricGraph
from src.models.routing import RoutingStrategy
from src.orchestration.sweep_runner import SweepIntegrityError, SweepRunner
from src.reporting.csv_reporter import read_sweep_csv
from src.routing.router import route

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """Arguments that parse but do not make sense together."""


def _params(args: argparse.Namespace) -> SpannerParams:
    if args.lam is None or args.theta_deg is None:
        raise UsageError("--lambda and --theta-deg are required")
    return SpannerParams.from_degrees(args.lam, args.theta_deg)


def _emit_points(points: list[Point2D], out: Path | None) -> None:
    if out is None:
        sys.stdout.write(format_points(points))
    else:
        write_points(points, out)
        print(f"wrote {len(points)} points to {out}")


def _emit_graph(graph: DirectedGeometricGraph, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(format_graph(graph))
    else:
        write_graph(graph, out)
        print(f"wrote {graph.kind} graph ({graph.n} vertices, {graph.edge_count} edges) to {out}")


# ── Subcommands ──────────────────────────────────────────────────────────────


def _cmd_gen(args: argparse.Namespace) -> int:
    seed = get_settings().default_seed if args.seed is None else args.seed
    _emit_points(generate_points(args.n, seed), args.output)
    return EXIT_OK


def _cmd_build(args: argparse.Namespace) -> int:
    points = read_points(args.input)
    match args.graph:
        case "glt":
            graph = build_glt(points, _params(args))
        case "hsp":
            graph = build_hsp(points)
        case "theta":
            graph = build_theta_graph(points, args.cones)
        case _:
            raise UsageError(f"unknown graph kind {args.graph!r}")
    if args.udg:
        graph = intersect_unit_disk(graph)
    _emit_graph(graph, args.output)
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    graph = read_graph(args.input)
    everything = not (args.spanning or args.strong or args.out_degree)
    status = EXIT_OK

    if args.spanning or everything:
        report = spanning_ratio(graph)
        print(f"spanning_ratio: {report.ratio!r}")
        if report.witness_pair is not None:
            print(f"witness_pair: {report.witness_pair[0]} {report.witness_pair[1]}")
        if not report.all_reachable:
            print(f"unreachable_pairs: {report.unreachable_pairs}")
            status = EXIT_CHECK_FAILED

    if args.strong:
        t = args.t
        if t is None:
            if args.lam is None or args.theta_deg is None:
                raise UsageError("--strong needs --t or both --lambda and --theta-deg")
            t = _params(args).stretch_bound
        cert = verify_strong_spanner(graph, t)
        print(f"strong_spanner({t!r}): {'holds' if cert.holds else 'fails'}")
        if not cert.holds and cert.failing_pair is not None:
            print(f"failing_pair: {cert.failing_pair[0]} {cert.failing_pair[1]}")
            status = EXIT_CHECK_FAILED

    if args.out_degree or everything:
        print(f"max_out_degree: {max_out_degree(graph)}")
    return status


def _cmd_route(args: argparse.Namespace) -> int:
    graph = read_graph(args.input)
    trace = route(
        graph,
        _params(args),
        args.source,
        args.dest,
        RoutingStrategy(args.strategy),
        hop_limit=args.hop_limit,
    )
    print(trace.format_line())
    if not trace.delivered:
        print(f"undelivered: {trace.outcome.value}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = parse_sweep_config(args.config)
    runner = SweepRunner(workers=args.workers)
    results = runner.run_to_csv(config, args.output, summary_json=args.json)
    failures = sum(r.failures for r in results)
    print(f"wrote {len(results)} cells to {args.output}")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    results = read_sweep_csv(args.input)
    report = compare_to_reference(results, args.reference, args.tolerance, metric=args.metric)
    print(
        f"{'PASS' if report.passed else 'FAIL'}: {report.cells_compared} cells, "
        f"max difference {report.max_difference:.6f} (tolerance {report.tolerance:g})"
    )
    for cell in report.worst_cells:
        print(
            f"  λ={cell.lam:g} θ={cell.theta_degrees:g}° {cell.metric}: "
            f"{cell.value:.6f} vs {cell.reference:.6f} (Δ {cell.difference:.6f})"
        )
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_history(args: argparse.Namespace) -> int:
    ledger = RunLedger(get_settings().ledger_db_path)
    rows = (
        ledger.query_by_config_hash(args.config_hash)
        if args.config_hash
        else ledger.query_recent(args.limit)
    )
    for row in rows:
        row.pop("result_json", None)
        print(json.dumps(row, sort_keys=True))
    return EXIT_OK


def _cmd_fixture(args: argparse.Namespace) -> int:
    if args.kind == "hsp":
        points = hsp_lower_bound_fixture(args.epsilon)
    else:
        points = theta_udg_counterexample_fixture(args.cones)
    _emit_points(points, args.output)
    return EXIT_OK


# ── Parser ───────────────────────────────────────────────────────────────────


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lambda", dest="lam", type=float, help="λ in [0.5, 1]")
    parser.add_argument("--theta-deg", dest="theta_deg", type=float, help="θ in degrees, [0, 90]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltspan",
        description="Build, analyse and route on λ-θ geometric spanners.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate uniform random points")
    gen.add_argument("-n", type=int, required=True)
    gen.add_argument("--seed", type=int)
    gen.add_argument("-o", "--output", type=Path)
    gen.set_defaults(func=_cmd_gen)

    build = sub.add_parser("build", help="build a spanner over a point file")
    build.add_argument("--graph", choices=("glt", "hsp", "theta"), required=True)
    _add_params(build)
    build.add_argument("--cones", type=int, default=8, help="cone count for --graph theta")
    build.add_argument("--udg", action="store_true", help="keep only edges of length ≤ 1")
    build.add_argument("-i", "--input", type=Path, required=True)
    build.add_argument("-o", "--output", type=Path)
    build.set_defaults(func=_cmd_build)

    analyze = sub.add_parser("analyze", help="spanning ratio, strong spanner, out-degree")
    analyze.add_argument("--spanning", action="store_true")
    analyze.add_argument("--strong", action="store_true")
    analyze.add_argument("--t", type=float)
    analyze.add_argument("--out-degree", action="store_true")
    _add_params(analyze)
    analyze.add_argument("-i", "--input", type=Path, required=True)
    analyze.set_defaults(func=_cmd_analyze)

    rt = sub.add_parser("route", help="route between two vertices")
    rt.add_argument("--from", dest="source", type=int, required=True)
    rt.add_argument("--to", dest="dest", type=int, required=True)
    rt.add_argument("--strategy", choices=[s.value for s in RoutingStrategy], required=True)
    rt.add_argument("--hop-limit", type=int)
    _add_params(rt)
    rt.add_argument("-i", "--input", type=Path, required=True)
    rt.set_defaults(func=_cmd_route)

    sweep = sub.add_parser("sweep", help="run a parameter sweep")
    sweep.add_argument("--config", type=Path, required=True)
    sweep.add_argument("-o", "--output", type=Path, required=True)
    sweep.add_argument("--workers", type=int)
    sweep.add_argument("--json", action="store_true", help="also write a JSON summary")
    sweep.set_defaults(func=_cmd_sweep)

    verify = sub.add_parser("verify", help="compare a sweep CSV with a reference table")
    verify.add_argument("--reference", type=Path, required=True)
    verify.add_argument("--tolerance", type=float, required=True)
    verify.add_argument("--metric", help="compare only this mean column")
    verify.add_argument("-i", "--input", type=Path, required=True)
    verify.set_defaults(func=_cmd_verify)

    history = sub.add_parser("history", help="list recorded sweep runs")
    history.add_argument("--limit", type=int, default=20)
    history.add_argument("--config-hash")
    history.set_defaults(func=_cmd_history)

    fixture = sub.add_parser("fixture", help="write a validated lower-bound point set")
    fixture.add_argument("kind", choices=("hsp", "theta"))
    fixture.add_argument("--epsilon", type=float, default=0.1)
    fixture.add_argument("--cones", type=int)
    fixture.add_argument("-o", "--output", type=Path)
    fixture.set_defaults(func=_cmd_fixture)

    return parser


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    try:
        return args.func(args)
    except (SweepIntegrityError, FixtureSearchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ValueError, OSError) as exc:
        logger.debug("Command rejected", command=args.command, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    setup_logging()
    sys.exit(cli_main())
