from typing import Any, Optional


class BaseSimulationException(Exception):
    status_code = 500
    exit_code = 1
    detail = "Internal simulation error"

    def __init__(self, detail: Optional[str] = None, **context: Any):
        self.detail = detail or self.detail
        self.context = context
        super().__init__(self.detail)

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"error": type(self).__name__, "detail": self.detail}
        if self.context:
            payload["context"] = {k: str(v) for k, v in self.context.items()}
        return payload


class InvalidArgumentException(BaseSimulationException, ValueError):
    status_code = 400
    exit_code = 2
    detail = "Invalid argument"


class UnknownNodeException(InvalidArgumentException):
    status_code = 404
    detail = "Unknown node id"


class ScenarioFileException(BaseSimulationException):
    status_code = 400
    exit_code = 3
    detail = "Scenario file could not be parsed"


class ScenarioValidationException(BaseSimulationException):
    status_code = 422
    exit_code = 3
    detail = "Scenario validation failed"


class ReferentialIntegrityException(ScenarioValidationException):
    detail = "Scenario references a node that does not exist"


class TopologyException(BaseSimulationException):
    status_code = 409
    exit_code = 4
    detail = "Invalid backhaul topology"


class CycleViolationException(TopologyException):
    detail = "Link would close a cycle in the backhaul tree"


class NoOpLinkException(TopologyException):
    detail = "Link replacement would not change the graph"


class MissingLinkException(TopologyException):
    detail = "Link does not exist"


class InvalidGraphException(TopologyException):
    detail = "Graph violates the backhaul constraints"


class OracleLimitException(InvalidArgumentException):
    detail = "Too many UAVs for exhaustive tree enumeration"


class InvariantViolationException(BaseSimulationException):
    status_code = 500
    exit_code = 5
    detail = "Simulation invariant violated"


class ExperimentAbortedException(InvariantViolationException):
    detail = "Experiment batch aborted"


class OutputWriteException(BaseSimulationException):
    status_code = 500
    exit_code = 6
    detail = "Failed to write output"
