from fastapi import APIRouter

from schemas.api import (
    DeviationSummary,
    FormationRunRequest,
    FormationRunResponse,
    PathSummary,
    StabilityCheckRequest,
    StabilityCheckResponse,
)
from services.game_service import GameService
from services.topology_service import TopologyService

router = APIRouter(prefix="/formation", tags=["Formation"])


@router.post("/run", response_model=FormationRunResponse)
def run_formation(request: FormationRunRequest):
    """Run myopic formation from the star topology until it is pairwise stable"""
    graph, positions, stats = GameService.run_formation(request.scenario, request.max_iterations)
    return FormationRunResponse(
        parents=dict(graph.parent),
        edge_list=TopologyService.to_edge_list(graph),
        positions=positions,
        iterations=stats.iterations_to_converge,
        link_changes=stats.link_changes,
        final_stable=stats.final_stable,
        cycle_length=stats.cycle_length,
        per_uav=[PathSummary.from_evaluation(e) for e in stats.per_uav],
    )


@router.post("/check", response_model=StabilityCheckResponse)
def check_stability(request: StabilityCheckRequest):
    """Check constraints and pairwise stability of a saved graph"""
    scenario = request.scenario
    graph = TopologyService.from_edge_list(request.edge_list)
    GameService.check_graph_nodes(graph, scenario)

    constraints = TopologyService.verify_constraints(graph)
    if not constraints.all_passed:
        return StabilityCheckResponse(constraints=constraints)

    positions = {**scenario.positions(), **(request.positions or {})}
    report = GameService.pairwise_stable(graph, positions, scenario)
    return StabilityCheckResponse(
        constraints=constraints,
        stable=report.stable,
        witness=DeviationSummary.from_deviation(report.witness) if report.witness else None,
    )
