from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

import numpy as np

from models.topology import BackhaulGraph
from schemas.scenario import Position3D
from schemas.utility import UtilityValue


@dataclass(frozen=True)
class GameState:
    """Graph and UAV positions between two rounds of formation play.

    utilities caches every UAV's utility for this graph and these positions;
    it is dropped whenever either changes.
    """

    graph: BackhaulGraph
    positions: dict[int, Position3D]
    initial_positions: dict[int, Position3D]
    iteration: int = 0
    rng: Optional[np.random.Generator] = field(default=None, compare=False, repr=False)
    utilities: Optional[Mapping[int, UtilityValue]] = field(default=None, compare=False, repr=False)

    def with_graph(self, graph: BackhaulGraph) -> "GameState":
        return replace(self, graph=graph, utilities=None)

    def at_iteration(self, iteration: int) -> "GameState":
        return replace(self, iteration=iteration)

    def with_positions(self, updates: dict[int, Position3D]) -> "GameState":
        if all(self.positions[uav] == position for uav, position in updates.items()):
            return self
        return replace(self, positions={**self.positions, **updates}, utilities=None)

    def with_utilities(self, utilities: Mapping[int, UtilityValue]) -> "GameState":
        return replace(self, utilities=utilities)

    def moved_since(self, other: "GameState") -> dict[int, float]:
        """Displacement of every UAV whose position differs from other"""
        return {
            uav: other.positions[uav].distance_to(position)
            for uav, position in self.positions.items()
            if position != other.positions[uav]
        }
