from fastapi import APIRouter
from .scenarios import router as scenarios_router
from .formation import router as formation_router
from .channel import router as channel_router

api_router = APIRouter()

api_router.include_router(scenarios_router)
api_router.include_router(formation_router)
api_router.include_router(channel_router)

__all__ = ["api_router"]
