import enum
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_core import PydanticCustomError

from utils.units import parse_decibels, parse_frequency, parse_power, parse_ratio

GATEWAY_ID = 0


class Position3D(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    z: float = Field(0.0, ge=0)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def distance_to(self, other: "Position3D") -> float:
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))

    @classmethod
    def from_array(cls, values: np.ndarray) -> "Position3D":
        return cls(x=float(values[0]), y=float(values[1]), z=float(values[2]))


class RadioParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    tx_power: float = Field(0.1, gt=0, description="Transmit power in W (20 dBm)")
    carrier_freq: float = Field(2e9, gt=0, description="Carrier frequency in Hz")
    noise_power: float = Field(1e-12, gt=0, description="Noise power in W (-90 dBm)")
    total_bandwidth: float = Field(40e6, gt=0, description="Total bandwidth B in Hz")
    snr_threshold: float = Field(10 ** (-0.4), gt=0, description="Linear SNR threshold (-4 dB)")
    eta_los: float = Field(5.0, gt=0, description="Excess LoS attenuation in dB")
    eta_nlos: float = Field(20.0, gt=0, description="Excess NLoS attenuation in dB")

    @field_validator("tx_power", "noise_power", mode="before")
    @classmethod
    def parse_power_units(cls, v):
        return parse_power(v)

    @field_validator("carrier_freq", "total_bandwidth", mode="before")
    @classmethod
    def parse_frequency_units(cls, v):
        return parse_frequency(v)

    @field_validator("snr_threshold", mode="before")
    @classmethod
    def parse_ratio_units(cls, v):
        return parse_ratio(v)

    @field_validator("eta_los", "eta_nlos", mode="before")
    @classmethod
    def parse_db_units(cls, v):
        return parse_decibels(v)

    @model_validator(mode="after")
    def check_attenuation_order(self) -> "RadioParams":
        if self.eta_nlos < self.eta_los:
            raise ValueError("eta_nlos must be greater than or equal to eta_los")
        return self


class EnvParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    c_env: float = Field(11.9, gt=0)
    d_env: float = Field(0.13, gt=0)
    speed_of_light: float = Field(3e8, gt=0)


class ForceParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    u_attract: float = Field(1.0, ge=0)
    u_repel_link: float = Field(10.0, ge=0)
    u_repel_collide: float = Field(10.0, ge=0, description="m^2")


class TrafficParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    packet_size: float = Field(2000.0, gt=0, description="Packet length in bits")
    sbs_rates: list[float] = Field(default_factory=list, description="DL arrival rate per SBS, packets/s")
    sbs_rates_ul: Optional[list[float]] = Field(None, description="UL arrival rates; DL rates when absent")

    @field_validator("sbs_rates", "sbs_rates_ul")
    @classmethod
    def check_nonnegative(cls, v):
        if v is not None and any(rate < 0 or not math.isfinite(rate) for rate in v):
            raise ValueError("arrival rates must be finite and non-negative")
        return v


class UtilityWeights(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: float = Field(1.0, ge=0, description="Utility per packet/s relayed")
    gamma: float = Field(1e4, ge=0, description="Utility per second of delay")


class DeltaMode(str, enum.Enum):
    SUBTREE = "subtree"
    ONE_HOP = "one_hop"


class RevertTarget(str, enum.Enum):
    INITIAL = "initial"
    ROUND_START = "round_start"


class ModelOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta_mode: DeltaMode = DeltaMode.SUBTREE
    co_channel_interference: bool = True
    dl_bandwidth_fraction: float = Field(1.0, gt=0, le=1)
    ul_bandwidth_fraction: float = Field(1.0, gt=0, le=1)
    collision_radius: float = Field(50.0, ge=0)
    deletion_revert: RevertTarget = RevertTarget.INITIAL
    rejection_revert: RevertTarget = RevertTarget.ROUND_START
    range_tolerance: float = Field(1e-9, ge=0)


class BoundingVolume(BaseModel):
    model_config = ConfigDict(frozen=True)

    x_min: float = 0.0
    x_max: float = 5000.0
    y_min: float = 0.0
    y_max: float = 5000.0
    z_min: float = Field(1.0, gt=0, description="Minimum UAV altitude")
    z_max: float = 1000.0

    @model_validator(mode="after")
    def check_extent(self) -> "BoundingVolume":
        if self.x_max <= self.x_min or self.y_max <= self.y_min or self.z_max <= self.z_min:
            raise ValueError("bounding volume must have positive extent")
        return self


class UAVSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=1)
    position: Position3D
    initial_position: Position3D

    @model_validator(mode="before")
    @classmethod
    def default_initial_position(cls, data):
        if isinstance(data, dict) and data.get("initial_position") is None and "position" in data:
            data = {**data, "initial_position": data["position"]}
        return data


class SBSSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=1)
    position: Position3D
    serving_uav: int


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    uavs: list[UAVSpec] = Field(..., min_length=1)
    gateway: Position3D
    sbss: list[SBSSpec] = Field(default_factory=list)
    radio: RadioParams = Field(default_factory=RadioParams)
    env: EnvParams = Field(default_factory=EnvParams)
    forces: ForceParams = Field(default_factory=ForceParams)
    traffic: TrafficParams = Field(default_factory=TrafficParams)
    weights: UtilityWeights = Field(default_factory=UtilityWeights)
    options: ModelOptions = Field(default_factory=ModelOptions)
    bounds: BoundingVolume = Field(default_factory=BoundingVolume)
    seed: int = Field(0, ge=0, le=2**64 - 1)

    @model_validator(mode="after")
    def check_world(self) -> "Scenario":
        uav_ids = [uav.id for uav in self.uavs]
        if len(set(uav_ids)) != len(uav_ids):
            raise ValueError("UAV ids must be unique")
        sbs_ids = [sbs.id for sbs in self.sbss]
        if len(set(sbs_ids)) != len(sbs_ids):
            raise ValueError("SBS ids must be unique")
        if self.gateway.z != 0:
            raise ValueError("gateway must be on the ground (z = 0)")
        for uav in self.uavs:
            if uav.position.z <= 0 or uav.initial_position.z <= 0:
                raise ValueError(f"UAV {uav.id} must be airborne (z > 0)")
        known = set(uav_ids)
        for sbs in self.sbss:
            if sbs.position.z != 0:
                raise ValueError(f"SBS {sbs.id} must be on the ground (z = 0)")
            if sbs.serving_uav not in known:
                raise PydanticCustomError(
                    "referential_integrity",
                    "SBS {sbs} references unknown serving UAV {uav}",
                    {"sbs": sbs.id, "uav": sbs.serving_uav},
                )
        if len(self.traffic.sbs_rates) != len(self.sbss):
            raise ValueError("traffic.sbs_rates must list one rate per SBS")
        if self.traffic.sbs_rates_ul is not None and len(self.traffic.sbs_rates_ul) != len(self.sbss):
            raise ValueError("traffic.sbs_rates_ul must list one rate per SBS")
        return self

    @property
    def num_uavs(self) -> int:
        return len(self.uavs)

    @property
    def uav_ids(self) -> tuple[int, ...]:
        return tuple(sorted(uav.id for uav in self.uavs))

    def positions(self) -> dict[int, Position3D]:
        return {uav.id: uav.position for uav in self.uavs}

    def initial_positions(self) -> dict[int, Position3D]:
        return {uav.id: uav.initial_position for uav in self.uavs}
