from .channel_service import ChannelService
from .scenario_service import ScenarioService
from .topology_service import TopologyService
from .traffic_service import TrafficService
from .utility_service import UtilityService
from .force_service import ForceService
from .game_service import GameService
from .experiment_service import ExperimentService

__all__ = [
    "ChannelService",
    "ScenarioService",
    "TopologyService",
    "TrafficService",
    "UtilityService",
    "ForceService",
    "GameService",
    "ExperimentService"
]
