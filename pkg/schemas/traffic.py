import enum
import math
from pydantic import BaseModel, ConfigDict, Field


class Direction(str, enum.Enum):
    DL = "DL"
    UL = "UL"


class LinkLoad(BaseModel):
    model_config = ConfigDict(frozen=True)

    child: int
    parent: int
    direction: Direction
    arrival: float = Field(..., ge=0, description="Psi, packets/s")
    service: float = Field(..., ge=0, description="mu, packets/s")

    @property
    def stable(self) -> bool:
        return self.service > self.arrival


class PathEvaluation(BaseModel):
    model_config = ConfigDict(frozen=True)

    uav: int
    hops: int = 0
    rate_dl: float = 0.0
    rate_ul: float = 0.0
    delay_dl: float = math.inf
    delay_ul: float = math.inf
    relayed_dl: float = 0.0
    relayed_ul: float = 0.0

    @property
    def connected(self) -> bool:
        return self.hops > 0

    @property
    def mean_rate(self) -> float:
        return (self.rate_dl + self.rate_ul) / 2.0

    @property
    def mean_delay(self) -> float:
        return (self.delay_dl + self.delay_ul) / 2.0
