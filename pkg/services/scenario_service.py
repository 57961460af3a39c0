import json
from pathlib import Path
from typing import Optional, Union

import numpy as np
from pydantic import ValidationError

from core.exceptions import (
    InvalidArgumentException,
    OutputWriteException,
    ReferentialIntegrityException,
    ScenarioFileException,
    ScenarioValidationException,
)
from schemas.scenario import (
    BoundingVolume,
    EnvParams,
    ForceParams,
    ModelOptions,
    Position3D,
    RadioParams,
    SBSSpec,
    Scenario,
    TrafficParams,
    UAVSpec,
    UtilityWeights,
)
from services.channel_service import ChannelService
from utils.helpers import SCENARIO_STREAM, make_rng
import logging

logger = logging.getLogger(__name__)


class ScenarioService:
    @staticmethod
    def generate_scenario(
        seed: int,
        num_uavs: int,
        num_sbs: int,
        area_side: float = 5000.0,
        uav_altitude: float = 100.0,
        arrival_scale: float = 1.0,
        gateway: Optional[Position3D] = None,
        radio: Optional[RadioParams] = None,
        env: Optional[EnvParams] = None,
        forces: Optional[ForceParams] = None,
        weights: Optional[UtilityWeights] = None,
        options: Optional[ModelOptions] = None,
        packet_size: float = 2000.0,
    ) -> Scenario:
        """Random world in an area_side x area_side square, reproducible from seed"""
        if num_uavs < 1 or num_sbs < 1:
            raise InvalidArgumentException(detail="num_uavs and num_sbs must be at least 1")
        if area_side <= 0:
            raise InvalidArgumentException(detail=f"area_side must be positive, got {area_side}")
        if uav_altitude <= 0:
            raise InvalidArgumentException(detail=f"uav_altitude must be positive, got {uav_altitude}")
        if arrival_scale < 0:
            raise InvalidArgumentException(detail=f"arrival_scale must be non-negative, got {arrival_scale}")

        rng = make_rng(seed, SCENARIO_STREAM)
        uav_xy = rng.uniform(0.0, area_side, size=(num_uavs, 2))
        sbs_xy = rng.uniform(0.0, area_side, size=(num_sbs, 2))
        rates = rng.uniform(0.0, 1.0, size=num_sbs) * arrival_scale

        uav_xyz = np.column_stack([uav_xy, np.full(num_uavs, uav_altitude)])
        sbs_xyz = np.column_stack([sbs_xy, np.zeros(num_sbs)])
        # argmin keeps the first minimum, i.e. the lowest UAV id on ties
        distances = np.linalg.norm(sbs_xyz[:, None, :] - uav_xyz[None, :, :], axis=2)
        serving = np.argmin(distances, axis=1)

        uavs = []
        for index, row in enumerate(uav_xyz):
            position = Position3D.from_array(row)
            uavs.append(UAVSpec(id=index + 1, position=position, initial_position=position))
        sbss = [
            SBSSpec(id=index + 1, position=Position3D.from_array(row), serving_uav=int(serving[index]) + 1)
            for index, row in enumerate(sbs_xyz)
        ]

        scenario = Scenario(
            uavs=uavs,
            gateway=gateway or Position3D(x=area_side / 2, y=area_side / 2, z=0.0),
            sbss=sbss,
            radio=radio or RadioParams(),
            env=env or EnvParams(),
            forces=forces or ForceParams(),
            traffic=TrafficParams(packet_size=packet_size, sbs_rates=[float(r) for r in rates]),
            weights=weights or UtilityWeights(),
            options=options or ModelOptions(),
            bounds=BoundingVolume(
                x_max=area_side,
                y_max=area_side,
                z_max=max(uav_altitude * 10, 1000.0),
            ),
            seed=seed,
        )
        ScenarioService.check_gateway_reachable(scenario)
        logger.debug(f"Generated scenario seed={seed} J={num_uavs} S={num_sbs}")
        return scenario

    @staticmethod
    def check_gateway_reachable(scenario: Scenario) -> bool:
        d_max = ChannelService.max_link_distance(scenario.radio, scenario.env)
        reachable = any(uav.position.distance_to(scenario.gateway) <= d_max for uav in scenario.uavs)
        if not reachable:
            logger.warning(
                f"No UAV lies within {d_max:.1f} m of the gateway (seed={scenario.seed})"
            )
        return reachable

    @staticmethod
    def per_uav_bandwidth(radio: RadioParams, num_uavs: int) -> float:
        if num_uavs < 1:
            raise InvalidArgumentException(detail="num_uavs must be at least 1")
        return radio.total_bandwidth / num_uavs

    @staticmethod
    def served_sbs(scenario: Scenario, uav_id: int) -> list[int]:
        """Indices (into scenario.sbss) of the SBSs served by a UAV"""
        return [index for index, sbs in enumerate(scenario.sbss) if sbs.serving_uav == uav_id]

    @staticmethod
    def parse_scenario(text: str, source: str = "<string>") -> Scenario:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ScenarioFileException(
                detail=f"{source}: line {e.lineno}, column {e.colno}: {e.msg}",
                line=e.lineno,
                column=e.colno,
            )
        try:
            return Scenario.model_validate(data)
        except ValidationError as e:
            errors = e.errors()
            fields = [".".join(str(part) for part in err["loc"]) or "<root>" for err in errors]
            messages = "; ".join(f"{field}: {err['msg']}" for field, err in zip(fields, errors))
            if any(err["type"] == "referential_integrity" for err in errors):
                raise ReferentialIntegrityException(detail=f"{source}: {messages}", fields=fields)
            raise ScenarioValidationException(detail=f"{source}: {messages}", fields=fields)

    @staticmethod
    def load_scenario(path: Union[str, Path]) -> Scenario:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ScenarioFileException(detail=f"Cannot read scenario file {path}: {e}", path=path)
        scenario = ScenarioService.parse_scenario(text, source=str(path))
        logger.info(f"Loaded scenario {path} (J={scenario.num_uavs}, S={len(scenario.sbss)})")
        ScenarioService.check_gateway_reachable(scenario)
        return scenario

    @staticmethod
    def save_scenario(scenario: Scenario, path: Union[str, Path]) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(scenario.model_dump_json(indent=2), encoding="utf-8")
        except OSError as e:
            raise OutputWriteException(detail=f"Cannot write scenario file {path}: {e}", path=path)
        return path
