from pydantic import BaseModel, ConfigDict


class UtilityValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    rate_sum: float
    packet_sum: float
    delay_sum: float


class MoveComparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    uav: int
    old: UtilityValue
    new: UtilityValue

    @property
    def improved(self) -> bool:
        return self.new.value > self.old.value
