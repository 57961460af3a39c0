import enum
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from core.config import settings
from schemas.game import RoundEvent, TraceRow
from schemas.scenario import DeltaMode, EnvParams, ForceParams, ModelOptions, RadioParams, UtilityWeights
from schemas.traffic import PathEvaluation


class Baseline(str, enum.Enum):
    STAR = "star"
    NONE = "none"


class ExperimentConfig(BaseModel):
    uav_counts: list[int] = Field(..., min_length=1)
    runs_per_point: int = Field(1, ge=1)
    base_seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, le=2**64 - 1)

    # scenario template
    sbs_per_uav: float = Field(2.0, gt=0, description="SBS count per scenario is round(sbs_per_uav * J)")
    area_side: float = Field(5000.0, gt=0)
    uav_altitude: float = Field(100.0, gt=0)
    arrival_scale: float = Field(1.0, ge=0)
    packet_size: float = Field(2000.0, gt=0)
    radio: RadioParams = Field(default_factory=RadioParams)
    env: EnvParams = Field(default_factory=EnvParams)
    forces: ForceParams = Field(default_factory=ForceParams)
    weights: UtilityWeights = Field(default_factory=UtilityWeights)
    options: ModelOptions = Field(default_factory=ModelOptions)
    delta_mode: Optional[DeltaMode] = None

    max_iterations: int = Field(default_factory=lambda: settings.DEFAULT_MAX_ITERATIONS, ge=1)
    output_dir: str = Field(default_factory=lambda: settings.DEFAULT_OUTPUT_DIR)
    baseline: Baseline = Baseline.STAR
    workers: int = Field(default_factory=lambda: settings.SWEEP_WORKERS, ge=1)
    write_events: bool = Field(default_factory=lambda: settings.WRITE_ROUND_EVENTS)
    write_traces: bool = True

    @field_validator("uav_counts")
    @classmethod
    def check_uav_counts(cls, v: list[int]) -> list[int]:
        if any(count < 1 for count in v):
            raise ValueError("every UAV count must be at least 1")
        return v

    def scenario_options(self) -> ModelOptions:
        if self.delta_mode is None:
            return self.options
        return self.options.model_copy(update={"delta_mode": self.delta_mode})

    def sbs_count(self, num_uavs: int) -> int:
        return max(1, round(self.sbs_per_uav * num_uavs))


class RunRecord(BaseModel):
    """Outcome of one seeded formation run and its star baseline"""

    num_uavs: int
    run: int
    seed: int
    iterations: int
    stable: bool
    link_changes: int = 0
    cycle_length: Optional[int] = None
    parents: dict[int, Optional[int]] = Field(default_factory=dict)
    per_uav: list[PathEvaluation] = Field(default_factory=list)
    baseline: Optional[list[PathEvaluation]] = None
    events: list[RoundEvent] = Field(default_factory=list)
    trace: list[TraceRow] = Field(default_factory=list)


class AggregatePoint(BaseModel):
    num_uavs: int
    runs: int
    mean_rate: float
    mean_delay: float
    infinite_delays: int = 0
    iterations_min: int
    iterations_mean: float
    iterations_max: int
    non_converged: int = 0
    star_mean_rate: Optional[float] = None
    star_mean_delay: Optional[float] = None
    rate_gain_pct: Optional[float] = None
    delay_gain_pct: Optional[float] = None


class AggregateMetrics(BaseModel):
    config: ExperimentConfig
    points: list[AggregatePoint] = Field(default_factory=list)
    runs: list[RunRecord] = Field(default_factory=list)

    @property
    def seeds(self) -> list[int]:
        return [record.seed for record in self.runs]
