"""Request and response schemas of the service endpoints."""

from __future__ import annotations

from typing import List, Literal

from pydantic import BaseModel, Field

ParityName = Literal["even", "odd"]
ObservableName = Literal["Z", "F", "S", "U", "C"]

PositiveFloat = Field(gt=0)


class SpectrumRequest(BaseModel):
    n_max: int = Field(default=10, ge=0, le=100_000)
    r: float = Field(default=1.0, gt=0)
    mu: float = Field(default=0.5, gt=-0.5)
    parities: List[ParityName] = Field(default=["even", "odd"], min_length=1)


class DensityRequest(BaseModel):
    n_list: List[int] = Field(default=[0, 1, 2], min_length=1)
    r: float = Field(default=1.0, gt=0)
    mu: float = Field(default=0.5, gt=-0.5)
    parity: ParityName = "even"
    xi_min: float = -4.0
    xi_max: float = 4.0
    xi_steps: int = Field(default=401, ge=2, le=100_001)


class ThermoRequest(BaseModel):
    r_list: List[float] = Field(default=[1.0, 1.5, 2.0], min_length=1)
    mu: float = Field(default=0.5, gt=-0.5)
    parities: List[ParityName] = Field(default=["even", "odd"], min_length=1)
    tau_min: float = Field(default=1.0, gt=0)
    tau_max: float = 10.0
    tau_steps: int = Field(default=181, ge=1, le=100_001)
    observables: List[ObservableName] = Field(
        default=["Z", "F", "S", "U", "C"], min_length=1
    )


class TableResponse(BaseModel):
    columns: List[str]
    rows: List[List[float]]


class VerifyRequest(BaseModel):
    fast: bool = False


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str
    elapsed_s: float


class VerifyResponse(BaseModel):
    checks: List[CheckModel]
    all_passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorResponse(BaseModel):
    detail: str


__all__ = [
    "CheckModel",
    "DensityRequest",
    "ErrorResponse",
    "HealthResponse",
    "SpectrumRequest",
    "TableResponse",
    "ThermoRequest",
    "VerifyRequest",
    "VerifyResponse",
]
