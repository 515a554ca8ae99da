"""FastAPI application wrapping the oscillator library.

Error contract: domain violations map to 400, numerical-verification
problems (non-convergence, cross-check disagreement) to 409, schema
violations to FastAPI's stock 422.  All responses are JSON.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ConsistencyError, ConvergenceError, DomainError
from ..params import OscillatorParams, Parity
from ..spectrum import density_table, spectrum_table
from ..tables import SeriesTable
from ..thermo import tau_grid_linear, thermo_scan
from ..verify import run_all
from .models import (
    CheckModel,
    DensityRequest,
    ErrorResponse,
    HealthResponse,
    SpectrumRequest,
    TableResponse,
    ThermoRequest,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="dunklosc", version=__version__)

_ERROR_RESPONSES = {400: {"model": ErrorResponse}, 409: {"model": ErrorResponse}}


@app.exception_handler(DomainError)
async def _domain_error(request: Request, exc: DomainError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(ConvergenceError)
@app.exception_handler(ConsistencyError)
async def _numerical_error(request: Request, exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=409, content={"detail": str(exc)})


def _to_response(table: SeriesTable) -> TableResponse:
    return TableResponse(columns=list(table.columns), rows=[list(r) for r in table.rows])


@app.get("/health", response_model=HealthResponse)
async def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/spectrum", response_model=TableResponse, responses=_ERROR_RESPONSES)
def spectrum(req: SpectrumRequest) -> TableResponse:
    params = OscillatorParams.from_r(req.r, req.mu)
    parities = [Parity.from_name(p) for p in req.parities]
    return _to_response(spectrum_table(req.n_max, params, parities))


@app.post("/density", response_model=TableResponse, responses=_ERROR_RESPONSES)
def density(req: DensityRequest) -> TableResponse:
    params = OscillatorParams.from_r(req.r, req.mu)
    table = density_table(
        req.n_list,
        params,
        Parity.from_name(req.parity),
        xi_min=req.xi_min,
        xi_max=req.xi_max,
        xi_steps=req.xi_steps,
    )
    return _to_response(table)


@app.post("/thermo", response_model=TableResponse, responses=_ERROR_RESPONSES)
def thermo(req: ThermoRequest) -> TableResponse:
    params_list = [OscillatorParams.from_r(r, req.mu) for r in req.r_list]
    parities = [Parity.from_name(p) for p in req.parities]
    grid = tau_grid_linear(req.tau_min, req.tau_max, req.tau_steps)
    return _to_response(thermo_scan(params_list, parities, grid, req.observables))


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    results = run_all(fast=req.fast)
    return VerifyResponse(
        checks=[
            CheckModel(
                name=r.name, passed=r.passed, detail=r.detail, elapsed_s=r.elapsed_s
            )
            for r in results
        ],
        all_passed=all(r.passed for r in results),
    )
