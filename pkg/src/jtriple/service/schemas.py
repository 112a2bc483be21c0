"""Pydantic request/response models mirroring the JSON file formats."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Pair = tuple[float, float]

CHECK_NAMES = (
    "derivation",
    "h1",
    "h2",
    "local",
    "weak-local",
    "dissipative",
    "tripotent-identities",
)


class SystemModel(BaseModel):
    kind: Literal["matrix", "custom"]
    rows: Optional[int] = Field(default=None, ge=1)
    cols: Optional[int] = Field(default=None, ge=1)
    dim: Optional[int] = Field(default=None, ge=1)
    structure: Optional[list[Pair]] = None

    @model_validator(mode="after")
    def _complete(self):
        if self.kind == "matrix":
            if self.rows is None or self.cols is None:
                raise ValueError("matrix system needs rows and cols")
        else:
            if self.dim is None or self.structure is None:
                raise ValueError("custom system needs dim and structure")
            if len(self.structure) != self.dim**4:
                raise ValueError("structure must hold dim^4 [re, im] pairs")
        return self


class ElementModel(BaseModel):
    coords: list[Pair]


class MapModel(BaseModel):
    dim: int = Field(ge=1)
    entries: list[Pair]


class BasisModel(BaseModel):
    dim_real: int
    basis: list[MapModel]


class ReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    trials: int
    max_residual: float
    passed: bool = Field(alias="pass")
    seed: int
    witnesses: list[dict] = Field(default_factory=list)
    checks: Optional[dict] = None


class MatrixSystemRequest(BaseModel):
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)


class ValidateRequest(BaseModel):
    system: SystemModel
    samples: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=1e-9, gt=0)


class BasisRequest(BaseModel):
    system: SystemModel


class GalleryRequest(BaseModel):
    n: int = Field(ge=1)
    x0: Optional[ElementModel] = None


class GalleryResponse(BaseModel):
    map: MapModel
    warning: Optional[str] = None


class CheckRequest(BaseModel):
    system: SystemModel
    map: MapModel
    checks: list[str] = Field(min_length=1)
    trials: int = Field(default=200, ge=1)
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=1e-9, gt=0)
    basis: Optional[BasisModel] = None

    @model_validator(mode="after")
    def _known_checks(self):
        unknown = [name for name in self.checks if name not in CHECK_NAMES]
        if unknown:
            raise ValueError(f"unknown checks: {unknown}; valid: {list(CHECK_NAMES)}")
        return self


class CheckResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    reports: list[ReportModel]
    passed: bool = Field(alias="pass")


class BatteryCounts(BaseModel):
    span: int = Field(default=30, ge=0)
    generic: int = Field(default=30, ge=0)
    perturbed: int = Field(default=30, ge=0)
    commutator: int = Field(default=10, ge=0)


class BatteryRequest(BaseModel):
    system: SystemModel
    trials: int = Field(default=50, ge=1)
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=1e-9, gt=0)
    counts: BatteryCounts = Field(default_factory=BatteryCounts)


class BatteryCase(BaseModel):
    kind: str
    index: int
    agreement: bool
    verdicts: dict


class BatteryResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    trials: int
    seed: int
    tol: float
    dim_real: int
    cases: list[BatteryCase]
    agreement: bool
    passed: bool = Field(alias="pass")
