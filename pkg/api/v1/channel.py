from fastapi import APIRouter

from schemas.api import MaxLinkDistanceRequest, MaxLinkDistanceResponse
from schemas.scenario import Position3D
from services.channel_service import ChannelService
from utils.units import linear_to_db

router = APIRouter(prefix="/channel", tags=["Channel"])


@router.post("/max-link-distance", response_model=MaxLinkDistanceResponse)
async def max_link_distance(request: MaxLinkDistanceRequest):
    """Largest A2A distance meeting the SNR threshold, with the SNR found there"""
    d_max = ChannelService.max_link_distance(request.radio, request.env)
    snr = ChannelService.snr_a2a(
        Position3D(x=0, y=0, z=100), Position3D(x=d_max, y=0, z=100), request.radio, request.env
    )
    return MaxLinkDistanceResponse(d_max=d_max, snr_at_d_max_db=linear_to_db(snr))
