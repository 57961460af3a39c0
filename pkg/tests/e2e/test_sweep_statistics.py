"""Large seeded sweeps with default parameters; run with `pytest -m slow`"""
import pytest

from models.topology import BackhaulGraph
from schemas.experiment import ExperimentConfig, RunRecord
from schemas.scenario import Position3D
from services.experiment_service import ExperimentService
from services.game_service import GameService
from services.topology_service import TopologyService

pytestmark = pytest.mark.slow


def sweep_config(tmp_path, uav_counts, runs, seed=7):
    return ExperimentConfig(
        uav_counts=uav_counts,
        runs_per_point=runs,
        base_seed=seed,
        workers=4,
        output_dir=str(tmp_path),
    )


def final_positions(record: RunRecord) -> dict[int, Position3D]:
    positions = {}
    for row in record.trace:
        positions[row.uav] = Position3D(x=row.x, y=row.y, z=row.z)
    return positions


def test_converged_runs_pass_the_stability_check(tmp_path):
    cfg = sweep_config(tmp_path, [5, 10], 100)
    sweep = ExperimentService.run_experiment(cfg)
    converged = [record for record in sweep.runs if record.stable]
    assert len(converged) > len(sweep.runs) // 2

    for record in converged:
        scenario = ExperimentService.build_scenario(cfg, record.num_uavs, record.seed)
        graph = BackhaulGraph(record.parents)
        positions = final_positions(record)
        assert TopologyService.verify_constraints(graph).all_passed
        assert GameService.stretched_links(graph, positions, scenario) == []
        assert GameService.pairwise_stable(graph, positions, scenario).stable, record.seed


def test_formed_networks_beat_the_star(tmp_path):
    sweep = ExperimentService.run_experiment(sweep_config(tmp_path, [15], 1000))
    point = sweep.points[0]
    assert point.mean_rate > point.star_mean_rate
    assert point.mean_delay < point.star_mean_delay
    assert point.rate_gain_pct >= 15.0
    assert point.delay_gain_pct >= 15.0


def test_iterations_grow_with_network_size(tmp_path):
    sweep = ExperimentService.run_experiment(sweep_config(tmp_path, [5, 10, 15, 20], 1000))
    means = [point.iterations_mean for point in sweep.points]
    assert means == sorted(means)
    assert 3.0 <= means[0] <= 30.0
    assert 30.0 <= means[-1] <= 200.0
