import math
from typing import Iterable, Mapping, Optional

from core.exceptions import InvalidArgumentException
from models.topology import BackhaulGraph
from schemas.channel import LinkBudget, LinkKind
from schemas.scenario import DeltaMode, Position3D, Scenario
from schemas.traffic import Direction, LinkLoad, PathEvaluation
from services.channel_service import ChannelService
from services.scenario_service import ScenarioService
from services.topology_service import TopologyService
import logging

logger = logging.getLogger(__name__)

Positions = Mapping[int, Position3D]


class TrafficService:
    """Arrival aggregation over the tree, per-hop service rates and Kleinrock delay"""

    @staticmethod
    def _rates(scenario: Scenario, direction: Direction) -> list[float]:
        if direction == Direction.UL and scenario.traffic.sbs_rates_ul is not None:
            return scenario.traffic.sbs_rates_ul
        return scenario.traffic.sbs_rates

    @staticmethod
    def local_arrival(j: int, scenario: Scenario, direction: Direction = Direction.DL) -> float:
        """Lambda_j: total arrival rate of the SBSs served by UAV j"""
        rates = TrafficService._rates(scenario, direction)
        return sum(rates[index] for index in ScenarioService.served_sbs(scenario, j))

    @staticmethod
    def local_arrivals(scenario: Scenario, direction: Direction = Direction.DL) -> dict[int, float]:
        rates = TrafficService._rates(scenario, direction)
        arrivals = {uav: 0.0 for uav in scenario.uav_ids}
        for index, sbs in enumerate(scenario.sbss):
            arrivals[sbs.serving_uav] += rates[index]
        return arrivals

    @staticmethod
    def arrival_map(g: BackhaulGraph, scenario: Scenario, direction: Direction = Direction.DL) -> dict[int, float]:
        """Psi for every UAV's uplink, according to scenario.options.delta_mode"""
        local = TrafficService.local_arrivals(scenario, direction)
        if scenario.options.delta_mode == DeltaMode.ONE_HOP:
            return {
                uav: local[uav] + sum(local[child] for child in g.children(uav))
                for uav in g.uav_ids
            }

        # parents are visited before their children, so the reversed order sums bottom-up
        order: list[int] = []
        stack = [uav for uav, up in g.parent.items() if up is None or up == g.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(g.children(node))

        totals: dict[int, float] = {}
        for node in reversed(order):
            totals[node] = local[node] + sum(totals[c] for c in g.children(node))
        return totals

    @staticmethod
    def aggregate_arrival(g: BackhaulGraph, j: int, scenario: Scenario, direction: Direction = Direction.DL) -> float:
        TopologyService._require_uav(g, j)
        return TrafficService.arrival_map(g, scenario, direction)[j]

    @staticmethod
    def link_delay(psi: float, mu: float) -> float:
        """Mean delay of one hop; infinite when the queue is unstable (mu <= psi)"""
        if psi < 0 or mu < 0:
            raise InvalidArgumentException(detail=f"Rates must be non-negative (psi={psi}, mu={mu})")
        if mu <= psi:
            return math.inf
        return psi / (2 * mu * (mu - psi)) + 1 / mu

    @staticmethod
    def bandwidth(scenario: Scenario, direction: Direction) -> float:
        fraction = (
            scenario.options.dl_bandwidth_fraction
            if direction == Direction.DL
            else scenario.options.ul_bandwidth_fraction
        )
        return ScenarioService.per_uav_bandwidth(scenario.radio, scenario.num_uavs) * fraction

    @staticmethod
    def hop_budget(
        g: BackhaulGraph,
        child: int,
        scenario: Scenario,
        positions: Optional[Positions] = None,
        direction: Direction = Direction.UL,
    ) -> LinkBudget:
        """Link budget of the hop between a UAV and its parent.

        Gateway hops form one co-channel group: the other UAVs attached to the
        gateway interfere. Both directions use the UAV-gateway geometry
        (reciprocal path loss).
        """
        positions = positions if positions is not None else scenario.positions()
        parent = g.parent[child]
        if parent is None:
            raise InvalidArgumentException(detail=f"UAV {child} has no uplink")
        bandwidth = TrafficService.bandwidth(scenario, direction)
        origin_id, dest_id = (child, parent) if direction == Direction.UL else (parent, child)

        if parent != g.root:
            return ChannelService.link_budget(
                origin_id, dest_id, positions[child], positions[parent],
                LinkKind.A2A, bandwidth, scenario.radio, scenario.env,
            )

        interferers = []
        if scenario.options.co_channel_interference:
            interferers = [
                (positions[other], scenario.radio.tx_power)
                for other in g.children(g.root)
                if other != child
            ]
        return ChannelService.link_budget(
            origin_id, dest_id, positions[child], scenario.gateway,
            LinkKind.A2G_GATEWAY, bandwidth, scenario.radio, scenario.env, interferers,
        )

    @staticmethod
    def path_loads(
        g: BackhaulGraph,
        j: int,
        direction: Direction,
        scenario: Scenario,
        positions: Optional[Positions] = None,
        arrivals: Optional[Mapping[int, float]] = None,
        hop_cache: Optional[dict[int, tuple[LinkBudget, LinkLoad]]] = None,
    ) -> Optional[list[tuple[LinkBudget, LinkLoad]]]:
        """Budget and load of every hop on j's path; None when j is disconnected.

        hop_cache, keyed by the child end of a hop, lets several paths over the
        same graph, positions and direction share their common hops.
        """
        path = TopologyService.path_to_gateway(g, j)
        if not path.connected:
            return None
        arrivals = arrivals if arrivals is not None else TrafficService.arrival_map(g, scenario, direction)
        hops = []
        for child, parent in path.hops:
            if hop_cache is not None and child in hop_cache:
                hops.append(hop_cache[child])
                continue
            budget = TrafficService.hop_budget(g, child, scenario, positions, direction)
            load = LinkLoad(
                child=child,
                parent=parent,
                direction=direction,
                arrival=arrivals[child],
                service=budget.rate / scenario.traffic.packet_size,
            )
            if hop_cache is not None:
                hop_cache[child] = (budget, load)
            hops.append((budget, load))
        return hops

    @staticmethod
    def path_delay(
        g: BackhaulGraph,
        j: int,
        direction: Direction,
        scenario: Scenario,
        positions: Optional[Positions] = None,
    ) -> float:
        hops = TrafficService.path_loads(g, j, direction, scenario, positions)
        return TrafficService._delay(hops)

    @staticmethod
    def path_rate(
        g: BackhaulGraph,
        j: int,
        direction: Direction,
        scenario: Scenario,
        positions: Optional[Positions] = None,
    ) -> float:
        hops = TrafficService.path_loads(g, j, direction, scenario, positions)
        return TrafficService._rate(hops)

    @staticmethod
    def relayed_packets(
        g: BackhaulGraph,
        j: int,
        direction: Direction,
        scenario: Scenario,
        positions: Optional[Positions] = None,
    ) -> float:
        hops = TrafficService.path_loads(g, j, direction, scenario, positions)
        return TrafficService._relayed(hops)

    @staticmethod
    def _delay(hops: Optional[list[tuple[LinkBudget, LinkLoad]]]) -> float:
        if hops is None:
            return math.inf
        return sum(TrafficService.link_delay(load.arrival, load.service) for _, load in hops)

    @staticmethod
    def _rate(hops: Optional[list[tuple[LinkBudget, LinkLoad]]]) -> float:
        if not hops:
            return 0.0
        return min(budget.rate for budget, _ in hops)

    @staticmethod
    def _relayed(hops: Optional[list[tuple[LinkBudget, LinkLoad]]]) -> float:
        if not hops or not all(load.stable for _, load in hops):
            return 0.0
        return hops[0][1].arrival

    @staticmethod
    def evaluate_many(
        g: BackhaulGraph,
        uavs: Iterable[int],
        scenario: Scenario,
        positions: Optional[Positions] = None,
    ) -> dict[int, PathEvaluation]:
        """Evaluate several UAVs on one graph; arrivals and hop budgets are computed once per direction"""
        uavs = list(uavs)
        for uav in uavs:
            TopologyService._require_uav(g, uav)
        positions = positions if positions is not None else scenario.positions()
        loads = {}
        for direction in (Direction.DL, Direction.UL):
            arrivals = TrafficService.arrival_map(g, scenario, direction)
            cache: dict[int, tuple[LinkBudget, LinkLoad]] = {}
            loads[direction] = {
                uav: TrafficService.path_loads(g, uav, direction, scenario, positions, arrivals, cache)
                for uav in uavs
            }

        evaluations = {}
        for uav in uavs:
            dl, ul = loads[Direction.DL][uav], loads[Direction.UL][uav]
            evaluations[uav] = PathEvaluation(
                uav=uav,
                hops=len(dl) if dl else 0,
                rate_dl=TrafficService._rate(dl),
                rate_ul=TrafficService._rate(ul),
                delay_dl=TrafficService._delay(dl),
                delay_ul=TrafficService._delay(ul),
                relayed_dl=TrafficService._relayed(dl),
                relayed_ul=TrafficService._relayed(ul),
            )
        return evaluations

    @staticmethod
    def evaluate_path(
        g: BackhaulGraph,
        j: int,
        scenario: Scenario,
        positions: Optional[Positions] = None,
    ) -> PathEvaluation:
        return TrafficService.evaluate_many(g, [j], scenario, positions)[j]

    @staticmethod
    def evaluate_all(
        g: BackhaulGraph,
        scenario: Scenario,
        positions: Optional[Positions] = None,
    ) -> list[PathEvaluation]:
        return list(TrafficService.evaluate_many(g, g.uav_ids, scenario, positions).values())
