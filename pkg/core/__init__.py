from .config import settings
from .exceptions import (
    BaseSimulationException,
    InvalidArgumentException,
    UnknownNodeException,
    ScenarioFileException,
    ScenarioValidationException,
    ReferentialIntegrityException,
    TopologyException,
    CycleViolationException,
    NoOpLinkException,
    MissingLinkException,
    InvalidGraphException,
    OracleLimitException,
    InvariantViolationException,
    ExperimentAbortedException,
    OutputWriteException
)

__all__ = [
    "settings",
    "BaseSimulationException",
    "InvalidArgumentException",
    "UnknownNodeException",
    "ScenarioFileException",
    "ScenarioValidationException",
    "ReferentialIntegrityException",
    "TopologyException",
    "CycleViolationException",
    "NoOpLinkException",
    "MissingLinkException",
    "InvalidGraphException",
    "OracleLimitException",
    "InvariantViolationException",
    "ExperimentAbortedException",
    "OutputWriteException"
]
