import math
from typing import Optional, Sequence

from core.exceptions import InvalidArgumentException
from schemas.channel import LinkBudget, LinkKind
from schemas.scenario import EnvParams, Position3D, RadioParams
from utils.units import db_to_linear
import logging

logger = logging.getLogger(__name__)

FSPL_CONSTANT_DB = -147.55


class ChannelService:
    """Air-to-ground and air-to-air link models.

    Path losses are in dB, SINR/SNR values are linear, rates are bits/s.
    """

    @staticmethod
    def free_space_loss(dist: float, freq: float, speed_of_light: Optional[float] = None) -> float:
        """Free-space path loss in dB.

        Uses the tabulated -147.55 dB constant unless a speed of light is given,
        in which case the exact 20*log10(4*pi*d*f/c) form is evaluated.
        """
        if dist <= 0:
            raise InvalidArgumentException(detail=f"Distance must be positive, got {dist}")
        if freq <= 0:
            raise InvalidArgumentException(detail=f"Frequency must be positive, got {freq}")
        if speed_of_light is None:
            return 20 * math.log10(dist) + 20 * math.log10(freq) + FSPL_CONSTANT_DB
        return 20 * math.log10(4 * math.pi * dist * freq / speed_of_light)

    @staticmethod
    def elevation_angle(o: Position3D, d: Position3D) -> float:
        """Elevation angle in degrees between two nodes"""
        dist = o.distance_to(d)
        if dist == 0:
            raise InvalidArgumentException(detail="Elevation angle undefined for coincident points")
        ratio = min(abs(o.z - d.z) / dist, 1.0)
        return math.degrees(math.asin(ratio))

    @staticmethod
    def los_probability(theta: float, env: EnvParams) -> float:
        if theta < 0 or theta > 90:
            raise InvalidArgumentException(detail=f"Elevation angle must lie in [0, 90], got {theta}")
        return 1.0 / (1.0 + env.c_env * math.exp(-env.d_env * (theta - env.c_env)))

    @staticmethod
    def a2g_mean_path_loss(o: Position3D, d: Position3D, radio: RadioParams, env: EnvParams) -> float:
        """Mean A2G path loss, LoS and NLoS losses mixed in dB"""
        dist = o.distance_to(d)
        xi = ChannelService.free_space_loss(dist, radio.carrier_freq, env.speed_of_light)
        p_los = ChannelService.los_probability(ChannelService.elevation_angle(o, d), env)
        return p_los * (xi + radio.eta_los) + (1 - p_los) * (xi + radio.eta_nlos)

    @staticmethod
    def a2a_path_loss(j: Position3D, i: Position3D, radio: RadioParams, env: Optional[EnvParams] = None) -> float:
        env = env or EnvParams()
        dist = j.distance_to(i)
        if dist == 0:
            raise InvalidArgumentException(detail="Coincident UAVs have no A2A path loss")
        return ChannelService.free_space_loss(dist, radio.carrier_freq, env.speed_of_light) + radio.eta_los

    @staticmethod
    def sinr_a2g(
        origin: Position3D,
        dest: Position3D,
        interferers: Sequence[tuple[Position3D, float]],
        radio: RadioParams,
        env: EnvParams,
        tx_power: Optional[float] = None,
    ) -> float:
        """Mean SINR at dest; interferers are (origin position, transmit power) pairs"""
        power = radio.tx_power if tx_power is None else tx_power
        gain = 1.0 / db_to_linear(ChannelService.a2g_mean_path_loss(origin, dest, radio, env))
        interference = sum(
            p_q / db_to_linear(ChannelService.a2g_mean_path_loss(q, dest, radio, env))
            for q, p_q in interferers
        )
        return power * gain / (interference + radio.noise_power)

    @staticmethod
    def snr_a2a(
        j: Position3D,
        i: Position3D,
        radio: RadioParams,
        env: Optional[EnvParams] = None,
        tx_power: Optional[float] = None,
    ) -> float:
        power = radio.tx_power if tx_power is None else tx_power
        loss = ChannelService.a2a_path_loss(j, i, radio, env)
        return power / (db_to_linear(loss) * radio.noise_power)

    @staticmethod
    def link_rate(bandwidth: float, gamma: float) -> float:
        """Shannon rate in bits/s"""
        if bandwidth <= 0:
            raise InvalidArgumentException(detail=f"Bandwidth must be positive, got {bandwidth}")
        if gamma < 0:
            raise InvalidArgumentException(detail=f"SINR must be non-negative, got {gamma}")
        return bandwidth * math.log2(1 + gamma)

    @staticmethod
    def max_link_distance(radio: RadioParams, env: Optional[EnvParams] = None) -> float:
        """Largest A2A separation whose SNR still meets the threshold"""
        env = env or EnvParams()
        spreading = (4 * math.pi * radio.carrier_freq / env.speed_of_light) ** 2
        denominator = radio.snr_threshold * radio.noise_power * db_to_linear(radio.eta_los) * spreading
        return math.sqrt(radio.tx_power / denominator)

    @staticmethod
    def link_budget(
        origin_id: int,
        dest_id: int,
        origin: Position3D,
        dest: Position3D,
        kind: LinkKind,
        bandwidth: float,
        radio: RadioParams,
        env: EnvParams,
        interferers: Sequence[tuple[Position3D, float]] = (),
    ) -> LinkBudget:
        if kind == LinkKind.A2A:
            loss = ChannelService.a2a_path_loss(origin, dest, radio, env)
            gamma = ChannelService.snr_a2a(origin, dest, radio, env)
        else:
            loss = ChannelService.a2g_mean_path_loss(origin, dest, radio, env)
            gamma = ChannelService.sinr_a2g(origin, dest, interferers, radio, env)
        return LinkBudget(
            origin=origin_id,
            dest=dest_id,
            kind=kind,
            path_loss_db=loss,
            gamma=gamma,
            bandwidth=bandwidth,
            rate=ChannelService.link_rate(bandwidth, gamma),
        )
