from .topology import BackhaulGraph
from .game_state import GameState

__all__ = [
    "BackhaulGraph",
    "GameState",
]
