from fastapi import APIRouter, status

from schemas.api import GenerateScenarioRequest
from schemas.scenario import Scenario
from services.scenario_service import ScenarioService

router = APIRouter(prefix="/scenarios", tags=["Scenarios"])


@router.post("/generate", response_model=Scenario, status_code=status.HTTP_201_CREATED)
def generate_scenario(request: GenerateScenarioRequest):
    """Generate a random seeded scenario with default radio parameters"""
    return ScenarioService.generate_scenario(
        seed=request.seed,
        num_uavs=request.num_uavs,
        num_sbs=request.num_sbs or 2 * request.num_uavs,
        area_side=request.area_side,
        uav_altitude=request.uav_altitude,
        arrival_scale=request.arrival_scale,
    )
