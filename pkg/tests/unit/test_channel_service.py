import math

import pytest

from core.exceptions import InvalidArgumentException
from schemas.scenario import EnvParams, ModelOptions, Position3D, RadioParams
from services.channel_service import ChannelService
from services.topology_service import TopologyService
from services.traffic_service import TrafficService
from schemas.traffic import Direction
from tests.fixtures.scenario_data import two_uav_relay


class TestFreeSpaceLoss:
    @pytest.mark.parametrize("dist", [1.0, 10.0, 1e3, 1e4])
    @pytest.mark.parametrize("freq", [0.7e9, 2e9, 5e9])
    def test_tabulated_constant_matches_friis(self, dist, freq):
        exact = 20 * math.log10(4 * math.pi * dist * freq / 3e8)
        assert ChannelService.free_space_loss(dist, freq) == pytest.approx(exact, abs=0.01)

    def test_speed_of_light_form_is_exact(self):
        loss = ChannelService.free_space_loss(1000.0, 2e9, speed_of_light=3e8)
        assert loss == pytest.approx(20 * math.log10(4 * math.pi * 1000.0 * 2e9 / 3e8), abs=1e-12)

    def test_doubling_distance_adds_six_db(self):
        near = ChannelService.free_space_loss(500.0, 2e9)
        far = ChannelService.free_space_loss(1000.0, 2e9)
        assert far - near == pytest.approx(20 * math.log10(2), abs=1e-9)

    def test_rejects_zero_distance(self):
        with pytest.raises(InvalidArgumentException):
            ChannelService.free_space_loss(0.0, 2e9)


class TestLineOfSight:
    def test_probability_at_env_constant(self):
        env = EnvParams()
        assert ChannelService.los_probability(env.c_env, env) == pytest.approx(1 / (1 + env.c_env))

    def test_probability_grows_with_elevation(self):
        env = EnvParams()
        low = ChannelService.los_probability(5.0, env)
        high = ChannelService.los_probability(80.0, env)
        assert 0 < low < high < 1

    def test_elevation_angle_of_overhead_uav(self):
        ground = Position3D(x=0, y=0, z=0)
        overhead = Position3D(x=0, y=0, z=100)
        assert ChannelService.elevation_angle(overhead, ground) == pytest.approx(90.0)

    def test_mean_path_loss_between_los_and_nlos_bounds(self):
        radio, env = RadioParams(), EnvParams()
        uav = Position3D(x=500, y=0, z=100)
        gateway = Position3D(x=0, y=0, z=0)
        fspl = ChannelService.free_space_loss(uav.distance_to(gateway), radio.carrier_freq, env.speed_of_light)
        loss = ChannelService.a2g_mean_path_loss(uav, gateway, radio, env)
        assert fspl + radio.eta_los < loss < fspl + radio.eta_nlos


class TestMaxLinkDistance:
    def test_default_radio(self):
        assert ChannelService.max_link_distance(RadioParams()) == pytest.approx(3364.6, rel=1e-3)

    def test_snr_at_max_distance_equals_threshold(self):
        radio = RadioParams()
        d_max = ChannelService.max_link_distance(radio)
        j = Position3D(x=0, y=0, z=100)
        i = Position3D(x=d_max, y=0, z=100)
        assert ChannelService.snr_a2a(j, i, radio) == pytest.approx(radio.snr_threshold, rel=1e-9)

    def test_more_power_reaches_further(self):
        weak = ChannelService.max_link_distance(RadioParams(tx_power="20 dBm"))
        strong = ChannelService.max_link_distance(RadioParams(tx_power="26 dBm"))
        assert strong == pytest.approx(weak * 10 ** (6 / 20), rel=1e-9)


class TestSinr:
    def test_interference_lowers_sinr(self):
        radio, env = RadioParams(), EnvParams()
        gateway = Position3D(x=0, y=0, z=0)
        uav = Position3D(x=500, y=0, z=100)
        other = Position3D(x=3000, y=0, z=100)
        clean = ChannelService.sinr_a2g(uav, gateway, [], radio, env)
        noisy = ChannelService.sinr_a2g(uav, gateway, [(other, radio.tx_power)], radio, env)
        assert noisy < clean

    def test_snr_a2a_rejects_coincident_uavs(self):
        p = Position3D(x=10, y=10, z=100)
        with pytest.raises(InvalidArgumentException):
            ChannelService.snr_a2a(p, p, RadioParams())

    def test_gateway_channel_group(self):
        scenario = two_uav_relay()
        quiet = two_uav_relay(options=ModelOptions(co_channel_interference=False))
        star = TopologyService.star_topology(scenario.uav_ids)
        shared = TrafficService.hop_budget(star, 1, scenario, direction=Direction.UL)
        alone = TrafficService.hop_budget(star, 1, quiet, direction=Direction.UL)
        assert shared.gamma < alone.gamma

    def test_gateway_links_are_reciprocal(self):
        scenario = two_uav_relay()
        star = TopologyService.star_topology(scenario.uav_ids)
        ul = TrafficService.hop_budget(star, 2, scenario, direction=Direction.UL)
        dl = TrafficService.hop_budget(star, 2, scenario, direction=Direction.DL)
        assert (ul.origin, ul.dest) == (2, 0)
        assert (dl.origin, dl.dest) == (0, 2)
        assert ul.gamma == pytest.approx(dl.gamma)


class TestLinkRate:
    def test_shannon(self):
        assert ChannelService.link_rate(1e6, 1.0) == pytest.approx(1e6)
        assert ChannelService.link_rate(1e6, 0.0) == 0.0

    def test_rejects_negative_sinr(self):
        with pytest.raises(InvalidArgumentException):
            ChannelService.link_rate(1e6, -0.5)
