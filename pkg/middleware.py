from fastapi import Request, status
from fastapi.responses import JSONResponse
from starlette.middleware.base import BaseHTTPMiddleware
import time
import logging
import uuid

logger = logging.getLogger(__name__)


class RequestIDMiddleware(BaseHTTPMiddleware):
    """Tag each request with an id, echoing a client-supplied X-Request-ID"""

    async def dispatch(self, request: Request, call_next):
        request_id = request.headers.get("X-Request-ID") or str(uuid.uuid4())
        request.state.request_id = request_id

        response = await call_next(request)
        response.headers["X-Request-ID"] = request_id

        return response


class LoggingMiddleware(BaseHTTPMiddleware):
    """Log all requests and responses"""

    async def dispatch(self, request: Request, call_next):
        start_time = time.perf_counter()
        request_id = getattr(request.state, "request_id", "unknown")

        logger.info(f"Request {request_id}: {request.method} {request.url.path}")

        try:
            response = await call_next(request)
        except Exception as e:
            elapsed = time.perf_counter() - start_time
            logger.error(
                f"Error processing {request.method} {request.url.path}: {e} "
                f"after {elapsed:.3f}s",
                exc_info=True
            )
            return JSONResponse(
                status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
                content={"detail": "An unexpected error occurred", "request_id": request_id}
            )

        elapsed = time.perf_counter() - start_time
        logger.info(
            f"Response {request_id}: {response.status_code} "
            f"for {request.method} {request.url.path} took {elapsed:.3f}s"
        )
        response.headers["X-Process-Time"] = f"{elapsed:.6f}"
        return response


def setup_middleware(app):
    """Configure all middleware for the application"""
    # executed in reverse order: request id is assigned before logging runs
    app.add_middleware(LoggingMiddleware)
    app.add_middleware(RequestIDMiddleware)

    logger.info("Middleware configured successfully")
