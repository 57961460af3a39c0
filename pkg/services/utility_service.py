import math
from typing import Iterable, Mapping, Optional

from models.topology import BackhaulGraph
from schemas.scenario import Position3D, Scenario
from schemas.traffic import PathEvaluation
from schemas.utility import MoveComparison, UtilityValue
from services.traffic_service import TrafficService
import logging

logger = logging.getLogger(__name__)


class UtilityService:
    @staticmethod
    def from_evaluation(evaluation: PathEvaluation, scenario: Scenario) -> UtilityValue:
        """(R_dl + R_ul) + delta*(P_dl + P_ul) - gamma*(tau_dl + tau_ul); -inf on infinite delay"""
        rate_sum = evaluation.rate_dl + evaluation.rate_ul
        packet_sum = evaluation.relayed_dl + evaluation.relayed_ul
        delay_sum = evaluation.delay_dl + evaluation.delay_ul
        if math.isinf(delay_sum):
            value = -math.inf
        else:
            weights = scenario.weights
            value = rate_sum + weights.delta * packet_sum - weights.gamma * delay_sum
        return UtilityValue(value=value, rate_sum=rate_sum, packet_sum=packet_sum, delay_sum=delay_sum)

    @staticmethod
    def utilities(
        g: BackhaulGraph,
        uavs: Iterable[int],
        scenario: Scenario,
        positions: Optional[Mapping[int, Position3D]] = None,
    ) -> dict[int, UtilityValue]:
        evaluations = TrafficService.evaluate_many(g, uavs, scenario, positions)
        return {uav: UtilityService.from_evaluation(e, scenario) for uav, e in evaluations.items()}

    @staticmethod
    def utility(
        g: BackhaulGraph,
        j: int,
        scenario: Scenario,
        positions: Optional[Mapping[int, Position3D]] = None,
    ) -> UtilityValue:
        return UtilityService.utilities(g, [j], scenario, positions)[j]

    @staticmethod
    def compare_move(
        g: BackhaulGraph,
        g_candidate: BackhaulGraph,
        movers: Iterable[int],
        scenario: Scenario,
        positions: Optional[Mapping[int, Position3D]] = None,
        candidate_positions: Optional[Mapping[int, Position3D]] = None,
        baseline: Optional[Mapping[int, UtilityValue]] = None,
    ) -> dict[int, MoveComparison]:
        """Old and new utility of each mover; `improved` is a strict gain.

        baseline, when given, holds the movers' utilities on g at positions.
        """
        movers = list(movers)
        if candidate_positions is None:
            candidate_positions = positions
        old = baseline if baseline is not None else UtilityService.utilities(g, movers, scenario, positions)
        new = UtilityService.utilities(g_candidate, movers, scenario, candidate_positions)
        return {uav: MoveComparison(uav=uav, old=old[uav], new=new[uav]) for uav in movers}
