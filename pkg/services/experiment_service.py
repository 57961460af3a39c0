import json
import math
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from itertools import repeat
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import ValidationError

from core.config import settings
from core.exceptions import (
    BaseSimulationException,
    ExperimentAbortedException,
    InvariantViolationException,
    OutputWriteException,
    ScenarioFileException,
    ScenarioValidationException,
)
from models.topology import BackhaulGraph
from schemas.experiment import AggregateMetrics, AggregatePoint, Baseline, ExperimentConfig, RunRecord
from schemas.scenario import Position3D, Scenario
from schemas.traffic import PathEvaluation
from services.game_service import GameService
from services.scenario_service import ScenarioService
from services.topology_service import TopologyService
from services.traffic_service import TrafficService
from utils.helpers import derive_run_seed, finite_or_none
import logging

logger = logging.getLogger(__name__)

METRIC_COLUMNS = ["J", "run", "seed", "uav", "rate_dl", "rate_ul", "delay_dl", "delay_ul", "iterations", "stable"]
BASELINE_COLUMNS = ["J", "run", "seed", "uav", "rate_dl", "rate_ul", "delay_dl", "delay_ul"]
AGGREGATE_COLUMNS = [
    "J",
    "runs",
    "mean_rate",
    "mean_delay",
    "infinite_delays",
    "iterations_min",
    "iterations_mean",
    "iterations_max",
    "non_converged",
]
GAIN_COLUMNS = ["star_mean_rate", "star_mean_delay", "rate_gain_pct", "delay_gain_pct"]
TRACE_COLUMNS = ["J", "run", "seed", "iteration", "round", "uav", "x", "y", "z"]


def _execute_run(cfg: ExperimentConfig, num_uavs: int, run: int) -> RunRecord:
    # module level so worker processes can unpickle it
    return ExperimentService.run_single(cfg, num_uavs, run)


def _with_means(frame: pd.DataFrame) -> pd.DataFrame:
    return frame.assign(
        rate=(frame["rate_dl"] + frame["rate_ul"]) / 2.0,
        delay=(frame["delay_dl"] + frame["delay_ul"]) / 2.0,
    )


class ExperimentService:
    @staticmethod
    def load_config(path: Union[str, Path]) -> ExperimentConfig:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ScenarioFileException(detail=f"Cannot read experiment config {path}: {e}", path=path)
        try:
            return ExperimentConfig.model_validate_json(text)
        except ValidationError as e:
            fields = [".".join(str(part) for part in err["loc"]) or "<root>" for err in e.errors()]
            raise ScenarioValidationException(detail=f"{path}: invalid experiment config ({', '.join(fields)})", fields=fields)

    @staticmethod
    def build_scenario(cfg: ExperimentConfig, num_uavs: int, seed: int) -> Scenario:
        return ScenarioService.generate_scenario(
            seed=seed,
            num_uavs=num_uavs,
            num_sbs=cfg.sbs_count(num_uavs),
            area_side=cfg.area_side,
            uav_altitude=cfg.uav_altitude,
            arrival_scale=cfg.arrival_scale,
            radio=cfg.radio,
            env=cfg.env,
            forces=cfg.forces,
            weights=cfg.weights,
            options=cfg.scenario_options(),
            packet_size=cfg.packet_size,
        )

    @staticmethod
    def star_baseline_metrics(scenario: Scenario) -> list[PathEvaluation]:
        """Direct transmission: every UAV on its own gateway link at its initial position"""
        star = TopologyService.star_topology(scenario.uav_ids)
        return TrafficService.evaluate_all(star, scenario, scenario.initial_positions())

    @staticmethod
    def check_run_invariants(
        graph: BackhaulGraph,
        positions: dict[int, Position3D],
        final_stable: bool,
        scenario: Scenario,
    ) -> None:
        if final_stable:
            report = TopologyService.verify_constraints(graph)
            if not report.all_passed:
                raise InvariantViolationException(detail=f"Converged graph fails constraints: {report.model_dump()}")
            stretched = GameService.stretched_links(graph, positions, scenario)
            if stretched:
                raise InvariantViolationException(detail=f"Converged graph has links beyond d_max: {stretched}")
        occupied = {(p.x, p.y, p.z) for p in positions.values()}
        if len(occupied) != len(positions):
            raise InvariantViolationException(detail="Two UAVs share a position")

    @staticmethod
    def run_single(cfg: ExperimentConfig, num_uavs: int, run: int) -> RunRecord:
        seed = derive_run_seed(cfg.base_seed, num_uavs, run)
        try:
            scenario = ExperimentService.build_scenario(cfg, num_uavs, seed)
            graph, positions, stats = GameService.run_formation(
                scenario, cfg.max_iterations, record_events=cfg.write_events
            )
            ExperimentService.check_run_invariants(graph, positions, stats.final_stable, scenario)
        except BaseSimulationException as e:
            logger.error(f"Run J={num_uavs} #{run} failed (seed {seed}): {e.detail}")
            raise ExperimentAbortedException(
                detail=f"Run J={num_uavs} #{run} failed (seed {seed}): {e.detail}", seed=seed
            ) from e

        baseline = None
        if cfg.baseline == Baseline.STAR:
            baseline = ExperimentService.star_baseline_metrics(scenario)
        return RunRecord(
            num_uavs=num_uavs,
            run=run,
            seed=seed,
            iterations=stats.iterations_to_converge,
            stable=stats.final_stable,
            link_changes=stats.link_changes,
            cycle_length=stats.cycle_length,
            parents=dict(graph.parent),
            per_uav=stats.per_uav,
            baseline=baseline,
            events=stats.events,
            trace=stats.trace if cfg.write_traces else [],
        )

    @staticmethod
    def run_experiment(cfg: ExperimentConfig) -> AggregateMetrics:
        """Every (J, run) point of the sweep, reduced in (J, run) order"""
        tasks = [(num_uavs, run) for num_uavs in cfg.uav_counts for run in range(cfg.runs_per_point)]
        logger.info(
            f"Sweep over J={cfg.uav_counts}, {cfg.runs_per_point} runs each, base seed {cfg.base_seed}, "
            f"{cfg.workers} worker(s)"
        )
        if cfg.workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                records = list(
                    pool.map(_execute_run, repeat(cfg), [t[0] for t in tasks], [t[1] for t in tasks])
                )
        else:
            records = [ExperimentService.run_single(cfg, num_uavs, run) for num_uavs, run in tasks]

        metrics = ExperimentService.metrics_frame(records)
        baseline = ExperimentService.baseline_frame(records) if cfg.baseline == Baseline.STAR else None
        aggregate = ExperimentService.aggregate_frame(metrics, baseline)
        points = [
            AggregatePoint(
                num_uavs=int(row["J"]),
                runs=int(row["runs"]),
                mean_rate=float(row["mean_rate"]),
                mean_delay=float(row["mean_delay"]),
                infinite_delays=int(row["infinite_delays"]),
                iterations_min=int(row["iterations_min"]),
                iterations_mean=float(row["iterations_mean"]),
                iterations_max=int(row["iterations_max"]),
                non_converged=int(row["non_converged"]),
                **{column: finite_or_none(float(row[column])) for column in GAIN_COLUMNS if column in row},
            )
            for _, row in aggregate.iterrows()
        ]
        for point in points:
            logger.info(
                f"J={point.num_uavs}: rate {point.mean_rate:.4g} bit/s, delay {point.mean_delay:.4g} s, "
                f"iterations {point.iterations_mean:.2f} ({point.non_converged} not converged)"
            )
        return AggregateMetrics(config=cfg, points=points, runs=records)

    @staticmethod
    def metrics_frame(records: Sequence[RunRecord]) -> pd.DataFrame:
        rows = [
            [record.num_uavs, record.run, record.seed, e.uav, e.rate_dl, e.rate_ul, e.delay_dl, e.delay_ul,
             record.iterations, record.stable]
            for record in records
            for e in record.per_uav
        ]
        return pd.DataFrame(rows, columns=METRIC_COLUMNS)

    @staticmethod
    def baseline_frame(records: Sequence[RunRecord]) -> pd.DataFrame:
        rows = [
            [record.num_uavs, record.run, record.seed, e.uav, e.rate_dl, e.rate_ul, e.delay_dl, e.delay_ul]
            for record in records
            for e in record.baseline or []
        ]
        return pd.DataFrame(rows, columns=BASELINE_COLUMNS)

    @staticmethod
    def _finite_mean_delay(frame: pd.DataFrame, order: list[int]) -> pd.Series:
        finite = frame[np.isfinite(frame["delay"])]
        return finite.groupby("J")["delay"].mean().reindex(order).fillna(math.inf)

    @staticmethod
    def aggregate_frame(metrics: pd.DataFrame, baseline: Optional[pd.DataFrame] = None) -> pd.DataFrame:
        """Per-J means over UAVs of all runs; delays average the finite values only"""
        columns = AGGREGATE_COLUMNS + (GAIN_COLUMNS if baseline is not None else [])
        if metrics.empty:
            return pd.DataFrame(columns=columns)

        frame = _with_means(metrics)
        order = list(dict.fromkeys(frame["J"].tolist()))
        runs = frame.drop_duplicates(["J", "run"])
        per_run = runs.groupby("J")
        table = pd.DataFrame(index=pd.Index(order, name="J"))
        table["runs"] = per_run["run"].count()
        table["mean_rate"] = frame.groupby("J")["rate"].mean()
        table["mean_delay"] = ExperimentService._finite_mean_delay(frame, order)
        table["infinite_delays"] = (~np.isfinite(frame["delay"])).groupby(frame["J"]).sum()
        table["iterations_min"] = per_run["iterations"].min()
        table["iterations_mean"] = per_run["iterations"].mean()
        table["iterations_max"] = per_run["iterations"].max()
        table["non_converged"] = (~runs["stable"].astype(bool)).groupby(runs["J"]).sum()

        if baseline is not None:
            star = _with_means(baseline)
            table["star_mean_rate"] = star.groupby("J")["rate"].mean()
            table["star_mean_delay"] = ExperimentService._finite_mean_delay(star, order)
            with np.errstate(divide="ignore", invalid="ignore"):
                table["rate_gain_pct"] = (table["mean_rate"] - table["star_mean_rate"]) / table["star_mean_rate"] * 100
                table["delay_gain_pct"] = (
                    (table["star_mean_delay"] - table["mean_delay"]) / table["star_mean_delay"] * 100
                )
        return table.reset_index()[columns]

    @staticmethod
    def traces_frame(records: Sequence[RunRecord]) -> pd.DataFrame:
        rows = [
            [record.num_uavs, record.run, record.seed, t.iteration, t.round, t.uav, t.x, t.y, t.z]
            for record in records
            for t in record.trace
        ]
        return pd.DataFrame(rows, columns=TRACE_COLUMNS)

    @staticmethod
    def manifest(metrics: AggregateMetrics) -> dict:
        return {
            "app": settings.APP_NAME,
            "version": settings.APP_VERSION,
            "rng": settings.RNG_ALGORITHM,
            "seed_derivation": "SeedSequence([base_seed, J, run]); scenario stream 0, game stream 1",
            "base_seed": metrics.config.base_seed,
            "config": metrics.config.model_dump(mode="json"),
            "runs": [{"J": r.num_uavs, "run": r.run, "seed": r.seed} for r in metrics.runs],
            "created_at": datetime.now(timezone.utc).isoformat(),
        }

    @staticmethod
    def emit_outputs(metrics: AggregateMetrics, output_dir: Optional[Union[str, Path]] = None) -> dict[str, Path]:
        """Write CSV tables, edge lists, traces, events and the run manifest"""
        cfg = metrics.config
        out = Path(output_dir or cfg.output_dir)
        written: dict[str, Path] = {}
        try:
            out.mkdir(parents=True, exist_ok=True)
            metrics_table = ExperimentService.metrics_frame(metrics.runs)
            baseline_table = None
            written["metrics"] = out / "metrics.csv"
            metrics_table.to_csv(written["metrics"], index=False)
            if cfg.baseline == Baseline.STAR:
                baseline_table = ExperimentService.baseline_frame(metrics.runs)
                written["baseline"] = out / "baseline.csv"
                baseline_table.to_csv(written["baseline"], index=False)
            written["aggregate"] = out / "aggregate.csv"
            ExperimentService.aggregate_frame(metrics_table, baseline_table).to_csv(written["aggregate"], index=False)

            if cfg.write_traces:
                written["traces"] = out / "traces" / "positions.csv"
                written["traces"].parent.mkdir(parents=True, exist_ok=True)
                ExperimentService.traces_frame(metrics.runs).to_csv(written["traces"], index=False)

            if cfg.write_events:
                written["events"] = out / "events.jsonl"
                with open(written["events"], "w", encoding="utf-8") as f:
                    for record in metrics.runs:
                        for event in record.events:
                            f.write(event.model_dump_json() + "\n")

            written["manifest"] = out / "manifest.json"
            written["manifest"].write_text(
                json.dumps(ExperimentService.manifest(metrics), indent=2) + "\n", encoding="utf-8"
            )
        except OSError as e:
            raise OutputWriteException(detail=f"Cannot write experiment outputs to {out}: {e}", path=out)

        written["graphs"] = out / "graphs"
        for record in metrics.runs:
            TopologyService.save_edge_list(
                BackhaulGraph(record.parents),
                written["graphs"] / f"J{record.num_uavs}_run{record.run}.edges",
            )
        logger.info(f"Wrote {len(metrics.runs)} runs to {out}")
        return written
