import pytest
from fastapi.testclient import TestClient

from models.game_state import GameState
from services.topology_service import TopologyService
from tests.fixtures.scenario_data import three_uav_line, two_uav_relay


@pytest.fixture
def relay_scenario():
    return two_uav_relay()


@pytest.fixture
def line_scenario():
    return three_uav_line()


@pytest.fixture
def star_state(relay_scenario):
    """Star topology over the relay scenario, as run_formation starts it"""
    return GameState(
        graph=TopologyService.star_topology(relay_scenario.uav_ids),
        positions=relay_scenario.positions(),
        initial_positions=relay_scenario.initial_positions(),
        iteration=1,
    )


@pytest.fixture
def client():
    from main import app

    with TestClient(app) as test_client:
        yield test_client
