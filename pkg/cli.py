"""Command line entry point: run, sweep, check and oracle"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from core.config import settings
from core.exceptions import BaseSimulationException, InvalidArgumentException, OutputWriteException
from schemas.experiment import Baseline, ExperimentConfig, RunRecord
from schemas.scenario import DeltaMode, Scenario
from services.experiment_service import ExperimentService
from services.game_service import GameService
from services.scenario_service import ScenarioService
from services.topology_service import TopologyService
from utils.helpers import finite_or_none

logger = logging.getLogger("cli")


def _scenario_from_args(args: argparse.Namespace) -> Scenario:
    if args.config:
        scenario = ScenarioService.load_scenario(args.config)
    else:
        seed = args.seed if args.seed is not None else settings.DEFAULT_SEED
        num_uavs = args.uavs or 5
        scenario = ScenarioService.generate_scenario(seed, num_uavs, args.sbs or 2 * num_uavs)
    if args.delta_mode:
        options = scenario.options.model_copy(update={"delta_mode": DeltaMode(args.delta_mode)})
        scenario = scenario.model_copy(update={"options": options})
    return scenario


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _scenario_from_args(args)
    graph, positions, stats = GameService.run_formation(scenario, args.max_iters, record_events=True)
    _print_json({
        "seed": scenario.seed,
        "uavs": scenario.num_uavs,
        "iterations": stats.iterations_to_converge,
        "final_stable": stats.final_stable,
        "link_changes": stats.link_changes,
        "cycle_length": stats.cycle_length,
        "parents": {str(uav): up for uav, up in graph.parent.items()},
        "per_uav": [
            {
                "uav": e.uav,
                "hops": e.hops,
                "rate": e.mean_rate,
                "delay": finite_or_none(e.mean_delay),
            }
            for e in stats.per_uav
        ],
    })

    if args.out:
        out = Path(args.out)
        final = scenario.model_copy(update={
            "uavs": [uav.model_copy(update={"position": positions[uav.id]}) for uav in scenario.uavs]
        })
        ScenarioService.save_scenario(final, out / "scenario.json")
        TopologyService.save_edge_list(graph, out / "graph.edges")
        record = RunRecord(
            num_uavs=scenario.num_uavs,
            run=0,
            seed=scenario.seed,
            iterations=stats.iterations_to_converge,
            stable=stats.final_stable,
            link_changes=stats.link_changes,
            cycle_length=stats.cycle_length,
            parents=dict(graph.parent),
            per_uav=stats.per_uav,
            events=stats.events,
            trace=stats.trace,
        )
        try:
            ExperimentService.metrics_frame([record]).to_csv(out / "metrics.csv", index=False)
            ExperimentService.traces_frame([record]).to_csv(out / "positions.csv", index=False)
            with open(out / "events.jsonl", "w", encoding="utf-8") as f:
                for event in stats.events:
                    f.write(event.model_dump_json() + "\n")
        except OSError as e:
            raise OutputWriteException(detail=f"Cannot write run outputs to {out}: {e}", path=out)
        logger.info(f"Run outputs written to {out}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.config:
        cfg = ExperimentService.load_config(args.config)
    else:
        cfg = ExperimentConfig(uav_counts=args.uavs or [5, 10, 15, 20])
    overrides = {
        "uav_counts": args.uavs if args.config else None,
        "runs_per_point": args.runs,
        "base_seed": args.seed,
        "output_dir": args.out,
        "baseline": Baseline(args.baseline) if args.baseline else None,
        "max_iterations": args.max_iters,
        "delta_mode": DeltaMode(args.delta_mode) if args.delta_mode else None,
        "workers": args.workers,
        "write_events": True if args.events else None,
    }
    cfg = ExperimentConfig.model_validate({
        **cfg.model_dump(),
        **{key: value for key, value in overrides.items() if value is not None},
    })

    metrics = ExperimentService.run_experiment(cfg)
    ExperimentService.emit_outputs(metrics)
    _print_json({"output_dir": cfg.output_dir, "points": [p.model_dump() for p in metrics.points]})
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    if not args.graph:
        raise InvalidArgumentException(detail="check needs --graph <edge list>")
    scenario = _scenario_from_args(args)
    graph = TopologyService.load_edge_list(args.graph)
    GameService.check_graph_nodes(graph, scenario)
    constraints = TopologyService.verify_constraints(graph)
    payload = {"constraints": constraints.model_dump(), "stable": None, "witness": None}
    if constraints.all_passed:
        report = GameService.pairwise_stable(graph, scenario.positions(), scenario)
        payload["stable"] = report.stable
        payload["witness"] = report.witness.model_dump(mode="json") if report.witness else None
    _print_json(payload)
    return 0 if payload["stable"] else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    scenario = _scenario_from_args(args)
    report = GameService.enumerate_trees_oracle(scenario, args.max_uavs)
    _print_json({
        "uavs": report.num_uavs,
        "trees": len(report.trees),
        "stable": [tree.parents for tree in report.stable_trees],
        "best": {
            "parents": report.best.parents,
            "sum_utility": finite_or_none(report.best.sum_utility),
            "stable": report.best_is_stable,
        },
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Scenario JSON (run/check/oracle) or experiment JSON (sweep)")
    common.add_argument("--seed", type=int, default=None, help="Seed (base seed for sweep)")
    common.add_argument("--max-iters", type=int, default=None, help="Iteration cap per run")
    common.add_argument("--delta-mode", choices=[m.value for m in DeltaMode], default=None)
    common.add_argument("--out", default=None, help="Output directory")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("--uavs", type=int, default=None, help="Number of UAVs of a generated scenario")
    single.add_argument("--sbs", type=int, default=None, help="Number of SBSs (default 2 per UAV)")

    parser = argparse.ArgumentParser(
        prog="uav-backhaul",
        description="Seeded simulator of UAV multi-hop backhaul network formation",
    )
    parser.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", parents=[common, single], help="Form the backhaul of one scenario")
    run.set_defaults(handler=cmd_run)

    sweep = subparsers.add_parser("sweep", parents=[common], help="Batch runs over UAV counts")
    sweep.add_argument("--uavs", type=int, nargs="+", default=None, help="UAV counts to sweep")
    sweep.add_argument("--runs", type=int, default=None, help="Runs per UAV count")
    sweep.add_argument("--baseline", choices=[b.value for b in Baseline], default=None)
    sweep.add_argument("--workers", type=int, default=None, help="Process pool size")
    sweep.add_argument("--events", action="store_true", help="Write events.jsonl")
    sweep.set_defaults(handler=cmd_sweep)

    check = subparsers.add_parser("check", parents=[common, single], help="Pairwise stability of a saved graph")
    check.add_argument("--graph", default=None, help="Edge list to check")
    check.set_defaults(handler=cmd_check)

    oracle = subparsers.add_parser("oracle", parents=[common, single], help="Enumerate every tree of a small scenario")
    oracle.add_argument("--max-uavs", type=int, default=None)
    oracle.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = (args.log_level or settings.LOG_LEVEL).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except BaseSimulationException as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return InvalidArgumentException.exit_code


if __name__ == "__main__":
    sys.exit(main())
