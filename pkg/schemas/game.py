import enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from schemas.traffic import PathEvaluation


class RoundAction(str, enum.Enum):
    DELETED = "deleted"
    DELETION_DECLINED = "deletion_declined"
    PARENT_LINK_KEPT = "parent_link_kept"
    REPLACED = "replaced"
    REJECTED = "rejected"
    OUT_OF_RANGE = "out_of_range"
    CYCLE_REJECTED = "cycle_rejected"

    @property
    def changes_graph(self) -> bool:
        return self in (RoundAction.DELETED, RoundAction.REPLACED)


class RoundEvent(BaseModel):
    """One activation during formation play, as written to events.jsonl"""

    model_config = ConfigDict(frozen=True)

    seed: int = 0
    iteration: int
    round: int
    actor: int
    activated: int
    action: RoundAction
    actor_utility_delta: Optional[float] = None
    partner_utility_delta: Optional[float] = None
    position_deltas: dict[int, float] = Field(default_factory=dict, description="Displacement in m per moved UAV")


class DeviationKind(str, enum.Enum):
    DELETION = "deletion"
    REPLACEMENT = "replacement"


class Deviation(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: DeviationKind
    actor: int
    partner: int
    actor_utility: tuple[float, float]
    partner_utility: Optional[tuple[float, float]] = None


class StabilityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    stable: bool
    witness: Optional[Deviation] = None
    deviations_checked: int = 0


class TraceRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    iteration: int
    round: int
    uav: int
    x: float
    y: float
    z: float


class CycleReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: int = Field(..., description="Index of the first occurrence of the repeated graph")
    length: int


class RunStats(BaseModel):
    iterations_to_converge: int
    link_changes: int = 0
    final_stable: bool = False
    per_uav: list[PathEvaluation] = Field(default_factory=list)
    cycle_length: Optional[int] = None
    events: list[RoundEvent] = Field(default_factory=list)
    trace: list[TraceRow] = Field(default_factory=list)


class OracleTree(BaseModel):
    model_config = ConfigDict(frozen=True)

    parents: dict[int, int]
    utilities: dict[int, float]
    sum_utility: float
    stable: bool


class OracleReport(BaseModel):
    num_uavs: int
    trees: list[OracleTree] = Field(default_factory=list)
    best_index: int = 0

    @property
    def stable_trees(self) -> list[OracleTree]:
        return [tree for tree in self.trees if tree.stable]

    @property
    def best(self) -> OracleTree:
        return self.trees[self.best_index]

    @property
    def best_is_stable(self) -> bool:
        return self.best.stable
