from typing import Optional

from pydantic import BaseModel, Field

from schemas.game import Deviation, DeviationKind
from schemas.scenario import EnvParams, Position3D, RadioParams, Scenario
from schemas.topology import ConstraintReport
from schemas.traffic import PathEvaluation
from utils.helpers import finite_or_none


class GenerateScenarioRequest(BaseModel):
    seed: int = Field(..., ge=0, le=2**64 - 1)
    num_uavs: int = Field(..., ge=1, le=200)
    num_sbs: Optional[int] = Field(None, ge=1, description="Defaults to 2 per UAV")
    area_side: float = Field(5000.0, gt=0)
    uav_altitude: float = Field(100.0, gt=0)
    arrival_scale: float = Field(1.0, ge=0)


class PathSummary(BaseModel):
    """PathEvaluation with infinite delays rendered as null"""

    uav: int
    hops: int
    rate_dl: float
    rate_ul: float
    delay_dl: Optional[float] = None
    delay_ul: Optional[float] = None

    @classmethod
    def from_evaluation(cls, evaluation: PathEvaluation) -> "PathSummary":
        return cls(
            uav=evaluation.uav,
            hops=evaluation.hops,
            rate_dl=evaluation.rate_dl,
            rate_ul=evaluation.rate_ul,
            delay_dl=finite_or_none(evaluation.delay_dl),
            delay_ul=finite_or_none(evaluation.delay_ul),
        )


class FormationRunRequest(BaseModel):
    scenario: Scenario
    max_iterations: Optional[int] = Field(None, ge=1, le=10000)


class FormationRunResponse(BaseModel):
    parents: dict[int, Optional[int]]
    edge_list: str
    positions: dict[int, Position3D]
    iterations: int
    link_changes: int
    final_stable: bool
    cycle_length: Optional[int] = None
    per_uav: list[PathSummary]


class StabilityCheckRequest(BaseModel):
    scenario: Scenario
    edge_list: str = Field(..., description="Edge-list snapshot of the graph to check")
    positions: Optional[dict[int, Position3D]] = Field(None, description="Defaults to scenario positions")


class DeviationSummary(BaseModel):
    kind: DeviationKind
    actor: int
    partner: int
    actor_utility: tuple[Optional[float], Optional[float]]
    partner_utility: Optional[tuple[Optional[float], Optional[float]]] = None

    @classmethod
    def from_deviation(cls, deviation: Deviation) -> "DeviationSummary":
        def pair(values):
            return None if values is None else tuple(finite_or_none(v) for v in values)

        return cls(
            kind=deviation.kind,
            actor=deviation.actor,
            partner=deviation.partner,
            actor_utility=pair(deviation.actor_utility),
            partner_utility=pair(deviation.partner_utility),
        )


class StabilityCheckResponse(BaseModel):
    constraints: ConstraintReport
    stable: Optional[bool] = Field(None, description="Null when the graph fails the constraints")
    witness: Optional[DeviationSummary] = None


class MaxLinkDistanceRequest(BaseModel):
    radio: RadioParams = Field(default_factory=RadioParams)
    env: EnvParams = Field(default_factory=EnvParams)


class MaxLinkDistanceResponse(BaseModel):
    d_max: float
    snr_at_d_max_db: float
