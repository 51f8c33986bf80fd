"""FastAPI application exposing the simulator."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..params import ConfigError, SystemParams
from . import handlers
from .schemas import (ParamsModel, RunRequest, RunResponse, SweepRequest,
                      SweepResponse)

app = FastAPI(
    title="edgesim",
    description="Discrete-time multi-server edge task offloading simulator",
    version="0.1.0",
)


@app.exception_handler(ConfigError)
async def config_error_handler(request: Request, exc: ConfigError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/defaults", response_model=ParamsModel)
def defaults() -> ParamsModel:
    return ParamsModel.from_params(SystemParams())


@app.post("/run", response_model=RunResponse)
def run_endpoint(req: RunRequest) -> RunResponse:
    return handlers.handle_run(req)


@app.post("/sweep", response_model=SweepResponse)
def sweep_endpoint(req: SweepRequest) -> SweepResponse:
    return handlers.handle_sweep(req)
