import itertools
from typing import Mapping, Optional, Sequence

import networkx as nx

from core.config import settings
from core.exceptions import (
    InvalidArgumentException,
    InvalidGraphException,
    OracleLimitException,
    UnknownNodeException,
)
from models.game_state import GameState
from models.topology import BackhaulGraph
from schemas.game import (
    CycleReport,
    Deviation,
    DeviationKind,
    OracleReport,
    OracleTree,
    RoundAction,
    RoundEvent,
    RunStats,
    StabilityReport,
    TraceRow,
)
from schemas.scenario import GATEWAY_ID, Position3D, RevertTarget, Scenario
from schemas.utility import UtilityValue
from services.channel_service import ChannelService
from services.force_service import ForceService
from services.topology_service import TopologyService
from services.traffic_service import TrafficService
from services.utility_service import UtilityService
from utils.helpers import GAME_STREAM, make_rng, safe_delta
import logging

logger = logging.getLogger(__name__)

ORACLE_HARD_LIMIT = 5

Positions = Mapping[int, Position3D]


class GameService:
    """Myopic backhaul formation, pairwise stability and the small-instance oracle"""

    @staticmethod
    def propose_replacement(
        g: BackhaulGraph,
        positions: Positions,
        j: int,
        w: int,
        scenario: Scenario,
        d_max: float,
    ) -> tuple[BackhaulGraph, dict[int, Position3D], bool]:
        """Candidate graph and positions for j replacing its uplink with (j, w).

        When w is a UAV out of range, j is attracted to it and, if that lands j
        within collision_radius of another UAV, pushed away again. The bool is
        False when the new link would still exceed d_max, or when moving j
        stretches one of its child links beyond d_max.
        """
        candidate = TopologyService.replace_parent_link(g, j, w)
        moved = dict(positions)
        if w == g.root:
            return candidate, moved, True

        params = scenario.forces
        limit = d_max * (1 + scenario.options.range_tolerance)
        if positions[j].distance_to(positions[w]) > d_max:
            attraction = ForceService.total_force(j, [w], [], positions, params, d_max)
            moved[j] = ForceService.apply_force(positions[j], attraction, scenario.bounds)
            radius = scenario.options.collision_radius
            crowded = any(
                uav != j and moved[j].distance_to(position) <= radius
                for uav, position in moved.items()
            )
            if crowded:
                push = ForceService.total_force(j, [], [], moved, params, d_max, proximity_radius=radius)
                moved[j] = ForceService.apply_force(moved[j], push, scenario.bounds)
                logger.debug(f"UAV {j} pushed {push.magnitude:.2f} m to avoid collision")

        feasible = moved[j].distance_to(moved[w]) <= limit
        if feasible and moved[j] != positions[j]:
            stretched = [c for c in candidate.children(j) if moved[j].distance_to(moved[c]) > limit]
            if stretched:
                logger.debug(f"UAV {j} cannot move toward {w}: links to {stretched} would exceed {limit:.1f} m")
                feasible = False
        return candidate, moved, feasible

    @staticmethod
    def stretched_links(
        g: BackhaulGraph,
        positions: Positions,
        scenario: Scenario,
        d_max: Optional[float] = None,
    ) -> list[tuple[int, int]]:
        """UAV-UAV links longer than d_max (plus range_tolerance)"""
        if d_max is None:
            d_max = ChannelService.max_link_distance(scenario.radio, scenario.env)
        limit = d_max * (1 + scenario.options.range_tolerance)
        return [
            (uav, up)
            for uav, up in g.parent.items()
            if up is not None and up != g.root and positions[uav].distance_to(positions[up]) > limit
        ]

    @staticmethod
    def check_graph_nodes(g: BackhaulGraph, scenario: Scenario) -> None:
        """Raise unless g spans exactly the scenario UAVs"""
        extra = sorted(set(g.uav_ids) - set(scenario.uav_ids))
        missing = sorted(set(scenario.uav_ids) - set(g.uav_ids))
        if extra or missing:
            raise InvalidGraphException(
                detail=f"Graph nodes do not match the scenario UAVs (unknown {extra}, missing {missing})"
            )

    @staticmethod
    def _check_round_ids(g: BackhaulGraph, j: int, w: int) -> None:
        if j not in g.parent:
            raise UnknownNodeException(detail=f"Unknown UAV id {j}")
        if not g.has_node(w):
            raise UnknownNodeException(detail=f"Unknown node id {w}")
        if w == j:
            raise InvalidArgumentException(detail=f"UAV {j} cannot activate itself")

    @staticmethod
    def play_round(
        state: GameState,
        j: int,
        w: int,
        scenario: Scenario,
        d_max: Optional[float] = None,
        round_index: int = 0,
    ) -> tuple[GameState, RoundEvent]:
        """UAV j activates node w once; returns the next state and what happened"""
        g = state.graph
        GameService._check_round_ids(g, j, w)
        if d_max is None:
            d_max = ChannelService.max_link_distance(scenario.radio, scenario.env)
        options = scenario.options
        if state.utilities is None:
            state = state.with_utilities(UtilityService.utilities(g, g.uav_ids, scenario, state.positions))
        baseline = state.utilities
        actor_delta = partner_delta = None
        next_state = state

        if g.has_edge(j, w) and g.parent[j] == w:
            # dropping its own uplink disconnects j, so it is never an improvement
            action = RoundAction.PARENT_LINK_KEPT
        elif g.has_edge(j, w):
            candidate = TopologyService.delete_link(g, j, w)
            comparison = UtilityService.compare_move(
                g, candidate, [j], scenario, state.positions, baseline=baseline
            )[j]
            actor_delta = safe_delta(comparison.new.value, comparison.old.value)
            if comparison.improved:
                action = RoundAction.DELETED
                next_state = state.with_graph(candidate)
                repel = ForceService.repulsive_force_link(
                    state.initial_positions[w], state.initial_positions[j], d_max, scenario.forces
                )
                logger.debug(f"UAV {w} repelled from UAV {j} (|F|={repel.magnitude:.2f} m)")
                if options.deletion_revert == RevertTarget.INITIAL:
                    next_state = next_state.with_positions({w: state.initial_positions[w]})
            else:
                action = RoundAction.DELETION_DECLINED
        elif w != g.root and w in TopologyService.subtree(g, j):
            action = RoundAction.CYCLE_REJECTED
        else:
            candidate, moved, feasible = GameService.propose_replacement(g, state.positions, j, w, scenario, d_max)
            movers = [j] if w == g.root else [j, w]
            comparisons = UtilityService.compare_move(
                g, candidate, movers, scenario, state.positions, moved, baseline
            )
            actor_delta = safe_delta(comparisons[j].new.value, comparisons[j].old.value)
            if w != g.root:
                partner_delta = safe_delta(comparisons[w].new.value, comparisons[w].old.value)
            accepted = feasible and all(comparison.improved for comparison in comparisons.values())
            if accepted:
                action = RoundAction.REPLACED
                next_state = state.with_graph(candidate).with_positions(moved)
            else:
                action = RoundAction.REJECTED if feasible else RoundAction.OUT_OF_RANGE
                if options.rejection_revert == RevertTarget.INITIAL:
                    next_state = state.with_positions({j: state.initial_positions[j]})

        event = RoundEvent(
            seed=scenario.seed,
            iteration=state.iteration,
            round=round_index,
            actor=j,
            activated=w,
            action=action,
            actor_utility_delta=actor_delta,
            partner_utility_delta=partner_delta,
            position_deltas=next_state.moved_since(state),
        )
        logger.debug(f"Iteration {state.iteration} round {round_index}: UAV {j} -> node {w}: {action.value}")
        return next_state, event

    @staticmethod
    def run_formation(
        scenario: Scenario,
        max_iterations: Optional[int] = None,
        record_events: bool = False,
    ) -> tuple[BackhaulGraph, dict[int, Position3D], RunStats]:
        """Play random sequential rounds from the star until the graph is pairwise stable"""
        max_iterations = max_iterations if max_iterations is not None else settings.DEFAULT_MAX_ITERATIONS
        if max_iterations < 1:
            raise InvalidArgumentException(detail=f"max_iterations must be at least 1, got {max_iterations}")

        d_max = ChannelService.max_link_distance(scenario.radio, scenario.env)
        uav_ids = list(scenario.uav_ids)
        state = GameState(
            graph=TopologyService.star_topology(uav_ids),
            positions=scenario.positions(),
            initial_positions=scenario.initial_positions(),
            rng=make_rng(scenario.seed, GAME_STREAM),
        )
        nodes = [state.graph.root, *uav_ids]
        history = [state.graph]
        events: list[RoundEvent] = []
        trace = [
            TraceRow(iteration=0, round=0, uav=uav, x=p.x, y=p.y, z=p.z)
            for uav, p in state.positions.items()
        ]
        link_changes = 0
        converged = False
        iteration = 0

        for iteration in range(1, max_iterations + 1):
            state = state.at_iteration(iteration)
            changes = 0
            order = state.rng.permutation(uav_ids)
            for round_index, j in enumerate(order, start=1):
                j = int(j)
                candidates = [node for node in nodes if node != j]
                w = candidates[int(state.rng.integers(len(candidates)))]
                state, event = GameService.play_round(state, j, w, scenario, d_max, round_index)
                if event.action.changes_graph:
                    changes += 1
                    history.append(state.graph)
                for uav in event.position_deltas:
                    p = state.positions[uav]
                    trace.append(TraceRow(iteration=iteration, round=round_index, uav=uav, x=p.x, y=p.y, z=p.z))
                if record_events:
                    events.append(event)
            link_changes += changes

            if changes == 0 and TopologyService.verify_constraints(state.graph).all_passed:
                in_range = not GameService.stretched_links(state.graph, state.positions, scenario, d_max)
                if in_range and GameService.pairwise_stable(
                    state.graph, state.positions, scenario, state.utilities
                ).stable:
                    converged = True
                    break

        cycle = GameService.detect_cycle(history)
        if converged:
            logger.info(f"Seed {scenario.seed}: converged after {iteration} iterations ({link_changes} link changes)")
        else:
            logger.warning(f"Seed {scenario.seed}: no stable network after {max_iterations} iterations")
        stats = RunStats(
            iterations_to_converge=iteration,
            link_changes=link_changes,
            final_stable=converged,
            per_uav=TrafficService.evaluate_all(state.graph, scenario, state.positions),
            cycle_length=cycle.length if cycle else None,
            events=events,
            trace=trace,
        )
        return state.graph, state.positions, stats

    @staticmethod
    def pairwise_stable(
        g: BackhaulGraph,
        positions: Positions,
        scenario: Scenario,
        utilities: Optional[Mapping[int, UtilityValue]] = None,
    ) -> StabilityReport:
        """No profitable single-link deletion and no mutually profitable replacement.

        utilities, when known, are every UAV's utility on g at positions.
        """
        GameService.check_graph_nodes(g, scenario)
        constraints = TopologyService.verify_constraints(g)
        if not constraints.all_passed:
            raise InvalidGraphException(detail=f"Graph fails backhaul constraints: {constraints.model_dump()}")
        d_max = ChannelService.max_link_distance(scenario.radio, scenario.env)
        if utilities is None:
            utilities = UtilityService.utilities(g, g.uav_ids, scenario, positions)
        checked = 0

        for j in g.uav_ids:
            for w in g.neighbors(j):
                if w == g.root:
                    continue
                checked += 1
                candidate = TopologyService.delete_link(g, j, w)
                comparison = UtilityService.compare_move(g, candidate, [j], scenario, positions, baseline=utilities)[j]
                if comparison.improved:
                    witness = Deviation(
                        kind=DeviationKind.DELETION,
                        actor=j,
                        partner=w,
                        actor_utility=(comparison.old.value, comparison.new.value),
                    )
                    return StabilityReport(stable=False, witness=witness, deviations_checked=checked)

        for j in g.uav_ids:
            subtree = TopologyService.subtree(g, j)
            for w in (g.root, *g.uav_ids):
                if w == j or g.has_edge(j, w) or (w != g.root and w in subtree):
                    continue
                checked += 1
                candidate, moved, feasible = GameService.propose_replacement(g, positions, j, w, scenario, d_max)
                if not feasible:
                    continue
                movers = [j] if w == g.root else [j, w]
                comparisons = UtilityService.compare_move(g, candidate, movers, scenario, positions, moved, utilities)
                if all(comparison.improved for comparison in comparisons.values()):
                    partner = comparisons.get(w)
                    witness = Deviation(
                        kind=DeviationKind.REPLACEMENT,
                        actor=j,
                        partner=w,
                        actor_utility=(comparisons[j].old.value, comparisons[j].new.value),
                        partner_utility=(partner.old.value, partner.new.value) if partner else None,
                    )
                    return StabilityReport(stable=False, witness=witness, deviations_checked=checked)

        return StabilityReport(stable=True, deviations_checked=checked)

    @staticmethod
    def enumerate_trees_oracle(scenario: Scenario, max_uavs: Optional[int] = None) -> OracleReport:
        """Every gateway-rooted spanning tree at the initial positions, with utilities and stability"""
        limit = max_uavs if max_uavs is not None else settings.ORACLE_MAX_UAVS
        if limit > ORACLE_HARD_LIMIT:
            raise OracleLimitException(detail=f"max_uavs is capped at {ORACLE_HARD_LIMIT}, got {limit}")
        num_uavs = scenario.num_uavs
        if num_uavs > limit:
            raise OracleLimitException(
                detail=f"{num_uavs} UAVs give {(num_uavs + 1) ** (num_uavs - 1)} trees; the oracle accepts at most {limit} UAVs"
            )

        uav_ids = list(scenario.uav_ids)
        labels = [GATEWAY_ID, *uav_ids]
        positions = scenario.initial_positions()
        trees = []
        for sequence in itertools.product(range(num_uavs + 1), repeat=num_uavs - 1):
            tree = nx.from_prufer_sequence(list(sequence))
            edges = [(labels[a], labels[b]) for a, b in tree.edges()]
            g = BackhaulGraph.from_edges(uav_ids, edges, labels[0])
            values = UtilityService.utilities(g, uav_ids, scenario, positions)
            utilities = {uav: value.value for uav, value in values.items()}
            trees.append(
                OracleTree(
                    parents={uav: up for uav, up in g.parent.items()},
                    utilities=utilities,
                    sum_utility=sum(utilities.values()),
                    stable=GameService.pairwise_stable(g, positions, scenario, values).stable,
                )
            )

        best_index = max(range(len(trees)), key=lambda index: trees[index].sum_utility)
        report = OracleReport(num_uavs=num_uavs, trees=trees, best_index=best_index)
        logger.info(
            f"Oracle: {len(trees)} trees, {len(report.stable_trees)} pairwise stable, "
            f"sum-utility maximizer stable={report.best_is_stable}"
        )
        return report

    @staticmethod
    def detect_cycle(history: Sequence[BackhaulGraph]) -> Optional[CycleReport]:
        """First graph that reappears in the history, with the length of the loop"""
        seen: dict[frozenset, int] = {}
        for index, g in enumerate(history):
            key = g.edges
            if key in seen:
                return CycleReport(start=seen[key], length=index - seen[key])
            seen[key] = index
        return None
