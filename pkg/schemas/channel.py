import enum
from pydantic import BaseModel, ConfigDict, Field


class LinkKind(str, enum.Enum):
    A2A = "A2A"
    A2G_GATEWAY = "A2G-gateway"


class LinkBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    origin: int
    dest: int
    kind: LinkKind
    path_loss_db: float
    gamma: float = Field(..., ge=0, description="Linear SINR or SNR")
    bandwidth: float = Field(..., gt=0, description="Hz")
    rate: float = Field(..., ge=0, description="bits/s")
