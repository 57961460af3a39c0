from typing import Iterable, Mapping, Optional

import numpy as np

from core.exceptions import InvalidArgumentException
from schemas.forces import ForceVector
from schemas.scenario import GATEWAY_ID, BoundingVolume, ForceParams, Position3D
import logging

logger = logging.getLogger(__name__)


def _vector(direction: np.ndarray, magnitude: float) -> ForceVector:
    fx, fy, fz = direction * magnitude
    return ForceVector(fx=float(fx), fy=float(fy), fz=float(fz))


def _unit(start: Position3D, end: Position3D) -> tuple[np.ndarray, float]:
    delta = end.as_array() - start.as_array()
    dist = float(np.linalg.norm(delta))
    if dist == 0:
        return np.zeros(3), 0.0
    return delta / dist, dist


class ForceService:
    """Virtual force field; forces are displacements in meters"""

    @staticmethod
    def attractive_force(j: Position3D, i: Position3D, d_max: float, params: ForceParams) -> ForceVector:
        """Pull j toward i by u_A*(d - d_max); zero when already in range"""
        direction, dist = _unit(j, i)
        if dist <= d_max:
            return ForceVector.zero()
        return _vector(direction, params.u_attract * (dist - d_max))

    @staticmethod
    def repulsive_force_link(j: Position3D, i: Position3D, d_max: float, params: ForceParams) -> ForceVector:
        """u_R1*(d - d_max) pointing away from i"""
        direction, dist = _unit(j, i)
        if dist == 0:
            return ForceVector.zero()
        return _vector(-direction, params.u_repel_link * (dist - d_max))

    @staticmethod
    def repulsive_force_collision(j: Position3D, i: Position3D, params: ForceParams) -> ForceVector:
        direction, dist = _unit(j, i)
        if dist == 0:
            raise InvalidArgumentException(detail="UAVs occupy the same position")
        return _vector(-direction, params.u_repel_collide / dist)

    @staticmethod
    def total_force(
        j: int,
        attractions: Iterable[int],
        repulsions: Iterable[int],
        positions: Mapping[int, Position3D],
        params: ForceParams,
        d_max: float,
        proximity_radius: Optional[float] = None,
    ) -> ForceVector:
        """Sum of attraction, link repulsion and collision repulsion acting on UAV j.

        Collision repulsion applies to UAVs within proximity_radius; None
        disables it.
        """
        attractions = list(attractions)
        repulsions = list(repulsions)
        if GATEWAY_ID in attractions or GATEWAY_ID in repulsions:
            raise InvalidArgumentException(detail="Virtual forces are never exerted toward the gateway")
        for node in [j, *attractions, *repulsions]:
            if node not in positions:
                raise InvalidArgumentException(detail=f"Unknown UAV id {node}")

        total = ForceVector.zero()
        for i in attractions:
            total = total + ForceService.attractive_force(positions[j], positions[i], d_max, params)
        for i in repulsions:
            total = total + ForceService.repulsive_force_link(positions[j], positions[i], d_max, params)
        if proximity_radius is not None:
            for i, position in positions.items():
                if i != j and positions[j].distance_to(position) <= proximity_radius:
                    total = total + ForceService.repulsive_force_collision(positions[j], position, params)
        return total

    @staticmethod
    def apply_force(p: Position3D, f: ForceVector, bounds: Optional[BoundingVolume] = None) -> Position3D:
        """Displace p by f, clamped to the bounding volume"""
        bounds = bounds or BoundingVolume(
            x_min=-np.inf, x_max=np.inf, y_min=-np.inf, y_max=np.inf, z_max=np.inf
        )
        x = min(max(p.x + f.fx, bounds.x_min), bounds.x_max)
        y = min(max(p.y + f.fy, bounds.y_min), bounds.y_max)
        z = p.z + f.fz
        if z < bounds.z_min:
            logger.warning(f"Altitude {z:.2f} m below minimum, clamped to {bounds.z_min} m")
            z = bounds.z_min
        z = min(z, bounds.z_max)
        return Position3D(x=x, y=y, z=z)
