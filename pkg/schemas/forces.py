import math
from pydantic import BaseModel, ConfigDict, field_validator


class ForceVector(BaseModel):
    model_config = ConfigDict(frozen=True)

    fx: float = 0.0
    fy: float = 0.0
    fz: float = 0.0

    @field_validator("fx", "fy", "fz")
    @classmethod
    def check_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("force components must be finite")
        return v

    @classmethod
    def zero(cls) -> "ForceVector":
        return cls()

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.fx ** 2 + self.fy ** 2 + self.fz ** 2)

    @property
    def is_zero(self) -> bool:
        return self.fx == 0 and self.fy == 0 and self.fz == 0

    def __add__(self, other: "ForceVector") -> "ForceVector":
        return ForceVector(fx=self.fx + other.fx, fy=self.fy + other.fy, fz=self.fz + other.fz)

    def __neg__(self) -> "ForceVector":
        return ForceVector(fx=-self.fx, fy=-self.fy, fz=-self.fz)
