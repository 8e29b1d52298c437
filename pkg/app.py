import asyncio
from contextlib import asynccontextmanager
from typing import Any, Callable, Dict, List, Optional, Union

import networkx
import numpy
import scipy
import sympy
import uvicorn
from fastapi import FastAPI, Response, status
from pydantic import BaseModel

from config import config
from config.exceptions import ComputationRefused, InternalInconsistency, SpecError
from hadamard import parse_complex_hadamard
import pipeline
from pipeline import AnalysisSpec, Report

logger = config.get_logger(__name__)


# Pydantic models
class Classify4Request(BaseModel):
    delta: str
    radius: Optional[int] = None


class CompareRequest(BaseModel):
    spec_a: AnalysisSpec
    spec_b: AnalysisSpec
    bound: Optional[int] = None


class CommutantRequest(BaseModel):
    spec: Optional[AnalysisSpec] = None
    matrix: Optional[List[List[str]]] = None  # rows of phase literals
    level: int = 1


class StatusResponse(BaseModel):
    status: str
    versions: Dict[str, str] = {}


class ErrorResponse(BaseModel):
    error: str
    code: Optional[int] = None


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Lifespan event logging start and stop of the service"""
    logger.info("Starting application...")
    try:
        yield
    except Exception as e:
        logger.error(f"Error during startup: {e}")
        raise
    finally:
        logger.info("Shutting down application...")


app = FastAPI(title="Hadamard Subfactor API", version="1.0.0",
              lifespan=lifespan)


async def _guarded(response: Response, action: Callable[..., Report], *args) -> Union[Report, ErrorResponse]:
    """
        Run a pipeline call off the event loop and map its failures
        Args:
            response: the http response whose status is set
            action: pipeline function returning a Report
        Returns:
            Report on success, ErrorResponse with 400, 422 or 500 otherwise
    """
    try:
        report = await asyncio.to_thread(action, *args)
    except SpecError as e:
        # Bad Request. The input does not describe a valid twist or matrix
        logger.error(f"Invalid input: {e}")
        response.status_code = status.HTTP_400_BAD_REQUEST
        return ErrorResponse(error=str(e), code=status.HTTP_400_BAD_REQUEST)
    except ComputationRefused as e:
        logger.error(f"Computation refused: {e}")
        response.status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
        return ErrorResponse(error=str(e), code=status.HTTP_422_UNPROCESSABLE_ENTITY)
    except InternalInconsistency as e:
        logger.error(f"Internal inconsistency: {e}")
        response.status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
        return ErrorResponse(error=str(e), code=status.HTTP_500_INTERNAL_SERVER_ERROR)
    response.status_code = status.HTTP_200_OK
    return report


@app.post("/analyze", response_model=Union[Report, ErrorResponse])
async def analyze(request: AnalysisSpec, response: Response):
    """
    Run the full pipeline on a twist spec or preset.
    Args:
        request (AnalysisSpec): groups and twist, or a preset name
    Returns:
        Report: orders, structures, graphs and invariants of the twist
    """
    logger.info(f"Analysis requested for {request.name or request.preset or 'explicit twist'}")
    return await _guarded(response, pipeline.analyze, request)


@app.post("/classify4", response_model=Union[Report, ErrorResponse])
async def classify4(request: Classify4Request, response: Response):
    return await _guarded(response, pipeline.classify4, request.delta, None, request.radius)


@app.post("/compare", response_model=Union[Report, ErrorResponse])
async def compare(request: CompareRequest, response: Response):
    return await _guarded(response, pipeline.compare, request.spec_a, request.spec_b, request.bound)


@app.post("/commutant", response_model=Union[Report, ErrorResponse])
async def commutant(request: CommutantRequest, response: Response):
    """
    Relative commutant dimension of a spec's matrix or of explicit rows.
    """
    if (request.spec is None) == (request.matrix is None):
        # Bad Request. Exactly one source is needed
        response.status_code = status.HTTP_400_BAD_REQUEST
        return ErrorResponse(
            error="Specify exactly one of 'spec' and 'matrix'",
            code=status.HTTP_400_BAD_REQUEST
        )
    source: Any = request.spec
    if request.matrix is not None:
        text = "\n".join(",".join(row) for row in request.matrix)
        try:
            source = parse_complex_hadamard(text, name="request")
        except SpecError as e:
            response.status_code = status.HTTP_400_BAD_REQUEST
            return ErrorResponse(error=str(e), code=status.HTTP_400_BAD_REQUEST)
    return await _guarded(response, pipeline.commutant, source, request.level)


@app.get("/statusz", response_model=StatusResponse)
def statusz(response: Response):
    response.status_code = status.HTTP_200_OK
    return StatusResponse(
        status="All systems online",
        versions={
            "networkx": networkx.__version__,
            "numpy": numpy.__version__,
            "scipy": scipy.__version__,
            "sympy": sympy.__version__,
        }
    )


# This is the main entry point for the subfactor service
if __name__ == '__main__':
    # Load config
    config.initialize()
    uvicorn.run(app, host="0.0.0.0", port=config.get_config()["server_port"])
