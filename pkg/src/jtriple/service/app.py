"""HTTP facade over the library.

Every endpoint is stateless and seed-deterministic: identical request
bodies produce identical responses, so the service can sit behind any
number of workers.  The CLI is a thin client of these routes.
"""

from __future__ import annotations

import warnings

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..battery import run_battery
from ..core import make_matrix_triple, validate_axioms
from ..derivations import derivation_basis, is_triple_derivation
from ..errors import JTripleError, NormalElementWarning
from ..jsonio import (
    basis_from_dict,
    basis_to_dict,
    element_from_dict,
    map_from_dict,
    map_to_dict,
    system_from_dict,
    system_to_dict,
)
from ..locality import (
    check_dissipative,
    check_h1,
    check_h2,
    check_local,
    check_tripotent_identities,
    check_weak_local,
    commutator_counterexample,
)
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="jtriple",
        version=__version__,
        description="Triple systems, derivation spaces, and locality check batteries.",
    )

    @app.exception_handler(JTripleError)
    async def domain_error(_: Request, exc: JTripleError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/systems/matrix", response_model=schemas.SystemModel,
              response_model_exclude_none=True)
    def systems_matrix(request: schemas.MatrixSystemRequest):
        return system_to_dict(make_matrix_triple(request.rows, request.cols))

    @app.post("/systems/validate", response_model=schemas.ReportModel,
              response_model_exclude_none=True)
    def systems_validate(request: schemas.ValidateRequest):
        system = system_from_dict(request.system.model_dump(exclude_none=True))
        report = validate_axioms(system, request.samples, request.seed, request.tol)
        return report.to_dict()

    @app.post("/derivations/basis", response_model=schemas.BasisModel)
    def derivations_basis(request: schemas.BasisRequest):
        system = system_from_dict(request.system.model_dump(exclude_none=True))
        return basis_to_dict(derivation_basis(system))

    @app.post("/gallery/commutator", response_model=schemas.GalleryResponse,
              response_model_exclude_none=True)
    def gallery_commutator(request: schemas.GalleryRequest):
        x0 = None
        if request.x0 is not None:
            system = make_matrix_triple(request.n, request.n)
            x0 = element_from_dict(system, request.x0.model_dump())
        warning_text = None
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NormalElementWarning)
            candidate = commutator_counterexample(request.n, x0)
            for item in caught:
                if issubclass(item.category, NormalElementWarning):
                    warning_text = str(item.message)
        return {"map": map_to_dict(candidate), "warning": warning_text}

    @app.post("/checks/run", response_model=schemas.CheckResponse,
              response_model_by_alias=True, response_model_exclude_none=True)
    def checks_run(request: schemas.CheckRequest):
        system = system_from_dict(request.system.model_dump(exclude_none=True))
        candidate = map_from_dict(system, request.map.model_dump())
        basis = None
        if request.basis is not None:
            basis = basis_from_dict(system, request.basis.model_dump())
        elif any(name in request.checks for name in ("local", "weak-local")):
            basis = derivation_basis(system)

        trials, seed, tol = request.trials, request.seed, request.tol
        reports = []
        for name in request.checks:
            if name == "derivation":
                reports.append(is_triple_derivation(candidate, tol))
            elif name == "h1":
                reports.append(check_h1(candidate, trials, seed, tol))
            elif name == "h2":
                reports.append(check_h2(candidate, trials, seed, tol))
            elif name == "local":
                reports.append(check_local(candidate, basis, trials, seed, tol))
            elif name == "weak-local":
                reports.append(check_weak_local(candidate, basis, trials, seed, tol))
            elif name == "dissipative":
                reports.append(check_dissipative(candidate, trials, seed, tol))
            elif name == "tripotent-identities":
                reports.append(check_tripotent_identities(candidate, trials, seed, tol))
        return {
            "reports": [report.to_dict() for report in reports],
            "pass": all(report.passed for report in reports),
        }

    @app.post("/battery/run", response_model=schemas.BatteryResponse, response_model_by_alias=True)
    def battery_run(request: schemas.BatteryRequest):
        system = system_from_dict(request.system.model_dump(exclude_none=True))
        return run_battery(
            system,
            basis=None,
            trials=request.trials,
            seed=request.seed,
            tol=request.tol,
            counts=request.counts.model_dump(),
        )

    return app


app = create_app()
