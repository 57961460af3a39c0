import logging

import pytest

from core.exceptions import InvalidArgumentException
from schemas.forces import ForceVector
from schemas.scenario import BoundingVolume, ForceParams, Position3D
from services.force_service import ForceService

PARAMS = ForceParams()


def at(x, y=0.0, z=100.0):
    return Position3D(x=x, y=y, z=z)


class TestAttraction:
    def test_pulls_toward_partner(self):
        f = ForceService.attractive_force(at(0), at(4000), 3364.6, PARAMS)
        assert f.fx == pytest.approx(635.4)
        assert f.fy == 0.0 and f.fz == 0.0

    def test_zero_at_range_boundary(self):
        assert ForceService.attractive_force(at(0), at(3000), 3000.0, PARAMS).is_zero

    def test_zero_within_range(self):
        assert ForceService.attractive_force(at(0), at(100), 3000.0, PARAMS).is_zero

    def test_lands_on_range_boundary(self):
        j, i = at(0, 0), at(3000, 4000)
        moved = ForceService.apply_force(j, ForceService.attractive_force(j, i, 2000.0, PARAMS))
        assert moved.distance_to(i) == pytest.approx(2000.0)


class TestRepulsion:
    def test_link_repulsion_points_away(self):
        f = ForceService.repulsive_force_link(at(0), at(3100), 3000.0, PARAMS)
        assert f.fx == pytest.approx(-1000.0)
        assert f.magnitude == pytest.approx(1000.0)

    def test_link_repulsion_opposes_attraction(self):
        j, i = at(0, 0), at(3000, 4000)
        attract = ForceService.attractive_force(j, i, 3000.0, PARAMS)
        repel = ForceService.repulsive_force_link(j, i, 3000.0, ForceParams(u_repel_link=1.0))
        assert repel.fx == pytest.approx(-attract.fx)
        assert repel.fy == pytest.approx(-attract.fy)

    def test_collision_repulsion(self):
        f = ForceService.repulsive_force_collision(at(0), at(2), PARAMS)
        assert f.fx == pytest.approx(-5.0)

    def test_collision_repulsion_fades_with_distance(self):
        near = ForceService.repulsive_force_collision(at(0), at(10), PARAMS).magnitude
        far = ForceService.repulsive_force_collision(at(0), at(1000), PARAMS).magnitude
        assert far == pytest.approx(0.01)
        assert near > far

    def test_coincident_uavs_rejected(self):
        with pytest.raises(InvalidArgumentException):
            ForceService.repulsive_force_collision(at(5), at(5), PARAMS)


class TestTotalForce:
    def test_nothing_active(self):
        positions = {1: at(0), 2: at(500)}
        assert ForceService.total_force(1, [], [], positions, PARAMS, 3000.0).is_zero

    def test_single_attraction(self):
        positions = {1: at(0), 2: at(4000)}
        total = ForceService.total_force(1, [2], [], positions, PARAMS, 3000.0)
        assert total == ForceService.attractive_force(positions[1], positions[2], 3000.0, PARAMS)

    def test_opposite_attractions_cancel(self):
        positions = {1: at(0), 2: at(4000), 3: at(-4000)}
        total = ForceService.total_force(1, [2, 3], [], positions, PARAMS, 3000.0)
        assert total.magnitude == pytest.approx(0.0, abs=1e-9)

    def test_collision_only_within_radius(self):
        positions = {1: at(0), 2: at(20), 3: at(900)}
        total = ForceService.total_force(1, [], [], positions, PARAMS, 3000.0, proximity_radius=50.0)
        assert total.fx == pytest.approx(-0.5)

    def test_gateway_never_exerts_force(self):
        with pytest.raises(InvalidArgumentException):
            ForceService.total_force(1, [0], [], {1: at(0)}, PARAMS, 3000.0)


class TestApplyForce:
    def test_zero_force_is_identity(self):
        assert ForceService.apply_force(at(10, 20), ForceVector.zero()) == at(10, 20)

    def test_displacement(self):
        assert ForceService.apply_force(at(0), ForceVector(fx=635.4)) == at(635.4)

    def test_negation_restores_position(self):
        p = at(123.25, 456.5, 80.0)
        f = ForceVector(fx=311.7, fy=-42.1, fz=3.3)
        back = ForceService.apply_force(ForceService.apply_force(p, f), -f)
        assert back.distance_to(p) < 1e-9

    def test_clamped_to_bounds(self):
        bounds = BoundingVolume(x_max=1000.0, y_max=1000.0)
        moved = ForceService.apply_force(at(900, 50), ForceVector(fx=500.0, fy=-100.0), bounds)
        assert (moved.x, moved.y) == (1000.0, 0.0)

    def test_altitude_floor(self, caplog):
        with caplog.at_level(logging.WARNING, logger="services.force_service"):
            moved = ForceService.apply_force(at(0, 0, 50.0), ForceVector(fz=-80.0))
        assert moved.z == 1.0
        assert "clamped" in caplog.text
