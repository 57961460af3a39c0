import json
import logging

import pytest

from core.exceptions import (
    InvalidArgumentException,
    ReferentialIntegrityException,
    ScenarioFileException,
    ScenarioValidationException,
)
from services.scenario_service import ScenarioService
from tests.fixtures.scenario_data import build_scenario


class TestGenerateScenario:
    def test_same_seed_same_world(self):
        a = ScenarioService.generate_scenario(11, 5, 10)
        b = ScenarioService.generate_scenario(11, 5, 10)
        assert a == b

    def test_different_seed_different_world(self):
        a = ScenarioService.generate_scenario(11, 5, 10)
        b = ScenarioService.generate_scenario(12, 5, 10)
        assert a.positions() != b.positions()

    def test_shape(self):
        scenario = ScenarioService.generate_scenario(1, 4, 9, area_side=2000.0, uav_altitude=150.0)
        assert scenario.uav_ids == (1, 2, 3, 4)
        assert len(scenario.sbss) == 9
        assert len(scenario.traffic.sbs_rates) == 9
        assert all(uav.position.z == 150.0 for uav in scenario.uavs)
        assert all(0 <= uav.position.x <= 2000.0 for uav in scenario.uavs)
        assert all(sbs.position.z == 0.0 for sbs in scenario.sbss)
        assert scenario.gateway.x == 1000.0 and scenario.gateway.y == 1000.0

    def test_sbs_served_by_nearest_uav(self):
        scenario = ScenarioService.generate_scenario(5, 6, 12)
        for sbs in scenario.sbss:
            nearest = min(scenario.uavs, key=lambda uav: uav.position.distance_to(sbs.position))
            assert sbs.serving_uav == nearest.id

    def test_served_sbs_partition(self):
        scenario = ScenarioService.generate_scenario(5, 6, 12)
        served = [index for uav in scenario.uav_ids for index in ScenarioService.served_sbs(scenario, uav)]
        assert sorted(served) == list(range(12))

    def test_rejects_empty_world(self):
        with pytest.raises(InvalidArgumentException):
            ScenarioService.generate_scenario(1, 0, 3)

    def test_per_uav_bandwidth_never_grows(self, relay_scenario):
        radio = relay_scenario.radio
        shares = [ScenarioService.per_uav_bandwidth(radio, j) for j in range(1, 8)]
        assert shares == sorted(shares, reverse=True)


class TestScenarioFiles:
    def test_save_and_load(self, tmp_path, relay_scenario):
        path = ScenarioService.save_scenario(relay_scenario, tmp_path / "scenario.json")
        assert ScenarioService.load_scenario(path) == relay_scenario

    def test_unit_strings_in_file(self, relay_scenario):
        data = relay_scenario.model_dump(mode="json")
        data["radio"]["tx_power"] = "20 dBm"
        data["radio"]["carrier_freq"] = "2 GHz"
        scenario = ScenarioService.parse_scenario(json.dumps(data))
        assert scenario.radio.tx_power == pytest.approx(0.1)
        assert scenario.radio.carrier_freq == pytest.approx(2e9)

    def test_malformed_json_reports_position(self):
        with pytest.raises(ScenarioFileException) as exc:
            ScenarioService.parse_scenario('{\n  "uavs": [,]\n}', source="broken.json")
        assert exc.value.context["line"] == 2
        assert "broken.json" in exc.value.detail

    def test_missing_field_named(self, relay_scenario):
        data = relay_scenario.model_dump(mode="json")
        del data["gateway"]
        with pytest.raises(ScenarioValidationException) as exc:
            ScenarioService.parse_scenario(json.dumps(data))
        assert "gateway" in exc.value.context["fields"]

    def test_unknown_serving_uav(self, relay_scenario):
        data = relay_scenario.model_dump(mode="json")
        data["sbss"][0]["serving_uav"] = 42
        with pytest.raises(ReferentialIntegrityException):
            ScenarioService.parse_scenario(json.dumps(data))

    def test_gateway_must_be_on_ground(self, relay_scenario):
        data = relay_scenario.model_dump(mode="json")
        data["gateway"]["z"] = 30.0
        with pytest.raises(ScenarioValidationException):
            ScenarioService.parse_scenario(json.dumps(data))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioFileException):
            ScenarioService.load_scenario(tmp_path / "nope.json")

    def test_loaded_scenario_warns_when_gateway_unreachable(self, tmp_path, caplog):
        scenario = build_scenario(
            uavs={1: (4500.0, 4500.0, 100.0)},
            sbss=[((4500.0, 4500.0), 1, 10.0)],
        )
        path = ScenarioService.save_scenario(scenario, tmp_path / "far.json")
        with caplog.at_level(logging.WARNING, logger="services.scenario_service"):
            ScenarioService.load_scenario(path)
        assert "within" in caplog.text

    def test_loaded_scenario_quiet_when_gateway_reachable(self, tmp_path, caplog, relay_scenario):
        path = ScenarioService.save_scenario(relay_scenario, tmp_path / "relay.json")
        with caplog.at_level(logging.WARNING, logger="services.scenario_service"):
            ScenarioService.load_scenario(path)
        assert caplog.records == []
