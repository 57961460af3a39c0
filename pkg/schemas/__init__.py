from .scenario import (
    GATEWAY_ID,
    Position3D,
    RadioParams,
    EnvParams,
    ForceParams,
    TrafficParams,
    UtilityWeights,
    DeltaMode,
    RevertTarget,
    ModelOptions,
    BoundingVolume,
    UAVSpec,
    SBSSpec,
    Scenario
)
from .channel import LinkKind, LinkBudget
from .topology import PathToGateway, ConstraintReport
from .traffic import Direction, LinkLoad, PathEvaluation
from .utility import UtilityValue, MoveComparison
from .forces import ForceVector
from .game import (
    RoundAction,
    RoundEvent,
    DeviationKind,
    Deviation,
    StabilityReport,
    TraceRow,
    CycleReport,
    RunStats,
    OracleTree,
    OracleReport
)
from .experiment import (
    Baseline,
    ExperimentConfig,
    RunRecord,
    AggregatePoint,
    AggregateMetrics
)

__all__ = [
    # Scenario
    "GATEWAY_ID",
    "Position3D",
    "RadioParams",
    "EnvParams",
    "ForceParams",
    "TrafficParams",
    "UtilityWeights",
    "DeltaMode",
    "RevertTarget",
    "ModelOptions",
    "BoundingVolume",
    "UAVSpec",
    "SBSSpec",
    "Scenario",
    # Channel
    "LinkKind",
    "LinkBudget",
    # Topology
    "PathToGateway",
    "ConstraintReport",
    # Traffic
    "Direction",
    "LinkLoad",
    "PathEvaluation",
    # Utility
    "UtilityValue",
    "MoveComparison",
    # Forces
    "ForceVector",
    # Game
    "RoundAction",
    "RoundEvent",
    "DeviationKind",
    "Deviation",
    "StabilityReport",
    "TraceRow",
    "CycleReport",
    "RunStats",
    "OracleTree",
    "OracleReport",
    # Experiment
    "Baseline",
    "ExperimentConfig",
    "RunRecord",
    "AggregatePoint",
    "AggregateMetrics"
]
