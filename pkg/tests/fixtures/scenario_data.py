"""Hand-built worlds with known geometry for service and API tests"""
from typing import Optional

from schemas.scenario import ModelOptions, Position3D, Scenario


def build_scenario(
    uavs: dict[int, tuple[float, float, float]],
    sbss: list[tuple[tuple[float, float], int, float]],
    gateway: tuple[float, float] = (0.0, 0.0),
    options: Optional[ModelOptions] = None,
    seed: int = 0,
) -> Scenario:
    """uavs maps id -> (x, y, z); sbss lists ((x, y), serving uav, arrival rate)"""
    return Scenario(
        uavs=[
            {"id": uav, "position": {"x": x, "y": y, "z": z}}
            for uav, (x, y, z) in uavs.items()
        ],
        gateway=Position3D(x=gateway[0], y=gateway[1], z=0.0),
        sbss=[
            {"id": index + 1, "position": {"x": x, "y": y, "z": 0.0}, "serving_uav": serving}
            for index, ((x, y), serving, _) in enumerate(sbss)
        ],
        traffic={"packet_size": 2000.0, "sbs_rates": [rate for _, _, rate in sbss]},
        options=options or ModelOptions(),
        seed=seed,
    )


def two_uav_relay(options: Optional[ModelOptions] = None, far_rate: float = 10.0) -> Scenario:
    """UAV 1 close to the gateway, UAV 2 far out but within A2A range of UAV 1.

    In the star, UAV 2's gateway link is weak and shares the gateway channel with
    UAV 1, so relaying 2 through 1 helps both of them.
    """
    return build_scenario(
        uavs={1: (500.0, 0.0, 100.0), 2: (3000.0, 0.0, 100.0)},
        sbss=[((500.0, 0.0), 1, 10.0), ((3000.0, 0.0), 2, far_rate)],
        options=options,
    )


def two_uav_with_straggler() -> Scenario:
    """two_uav_relay plus UAV 3 in the far corner, out of A2A range of everyone"""
    return build_scenario(
        uavs={1: (500.0, 0.0, 100.0), 2: (3000.0, 0.0, 100.0), 3: (4500.0, 4500.0, 100.0)},
        sbss=[((500.0, 0.0), 1, 10.0), ((3000.0, 0.0), 2, 10.0), ((4500.0, 4500.0), 3, 10.0)],
    )


def three_uav_line(options: Optional[ModelOptions] = None) -> Scenario:
    """UAVs 1, 2, 3 on a line away from the gateway, 1 km apart"""
    return build_scenario(
        uavs={1: (500.0, 0.0, 100.0), 2: (1500.0, 0.0, 100.0), 3: (2500.0, 0.0, 100.0)},
        sbss=[((500.0, 0.0), 1, 5.0), ((1500.0, 0.0), 2, 7.0), ((2500.0, 0.0), 3, 11.0)],
        options=options,
    )


def relay_with_far_partner() -> Scenario:
    """UAV 1 relays UAV 2 (2.9 km north of it); UAV 3 lies 4 km west of UAV 1.

    With d_max = 3000 m, pulling UAV 1 into range of UAV 3 leaves UAV 2 out of
    range of UAV 1.
    """
    return build_scenario(
        uavs={1: (4100.0, 0.0, 100.0), 2: (4100.0, 2900.0, 100.0), 3: (100.0, 0.0, 100.0)},
        sbss=[((4100.0, 0.0), 1, 5.0), ((4100.0, 2900.0), 2, 5.0), ((100.0, 0.0), 3, 5.0)],
    )


def single_uav() -> Scenario:
    return build_scenario(
        uavs={1: (400.0, 300.0, 100.0)},
        sbss=[((400.0, 300.0), 1, 20.0)],
    )


def compact_scenario(seed: int, num_uavs: int) -> Scenario:
    """Random world small enough that every UAV pair is within A2A range"""
    from services.scenario_service import ScenarioService

    return ScenarioService.generate_scenario(seed, num_uavs, 2 * num_uavs, area_side=1500.0)
