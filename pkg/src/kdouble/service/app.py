"""HTTP service exposing the classifier, invariants, quotients, and models.

The service is a thin wrapper: every endpoint resolves its input to building
data, calls the core package, and returns the standard JSON envelope.  It
holds no state, so it is safe behind any number of workers.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import verify as verify_mod
from ..building import BuildingDataNumeric, invariants, validate
from ..classify import SearchConfig, enumerate_families, family_data, family_table, lookup
from ..equations import build_model, eliminate
from ..errors import GroupNotExponentTwo, NonIsolatedBaseLocus, UnknownFamily
from ..groups import FiniteAbelianGroup
from ..quotients import all_quotient_reports, burger_check, k3_towers
from ..serialize import to_envelope
from .schemas import (
    ClassifyIn,
    DataIn,
    EnvelopeOut,
    EquationsIn,
    FamilySelector,
    QuotientsIn,
    VerifyIn,
    VerifyOut,
)


def _data_from_payload(payload: DataIn) -> BuildingDataNumeric:
    try:
        bd = BuildingDataNumeric(
            group=FiniteAbelianGroup(tuple(payload.orders)),
            l=tuple(payload.l),
            d=tuple(payload.d),
            base_dim=payload.base_dim,
            connected=payload.connected,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    violations = validate(bd)
    if violations:
        raise HTTPException(
            status_code=400,
            detail="invalid building data: "
            + "; ".join(str(v) for v in violations[:10]),
        )
    return bd


def _resolve(selector: FamilySelector) -> BuildingDataNumeric:
    if selector.family is not None:
        try:
            return family_data(selector.family)
        except UnknownFamily as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
    return _data_from_payload(selector.data)


def create_app() -> FastAPI:
    app = FastAPI(
        title="kdouble",
        description="Classification and analysis of smooth (Z/2)^k covers "
        "of the plane with geometric genus three.",
    )

    @app.get("/families", response_model=EnvelopeOut)
    def families() -> dict:
        return to_envelope(list(family_table()))

    @app.get("/families/{label}", response_model=EnvelopeOut)
    def family(label: str) -> dict:
        try:
            return to_envelope(lookup(label))
        except UnknownFamily as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.post("/classify", response_model=EnvelopeOut)
    def classify(body: ClassifyIn) -> dict:
        found = enumerate_families(SearchConfig(k_max=body.k_max, jobs=body.jobs))
        return to_envelope(found)

    @app.post("/invariants", response_model=EnvelopeOut)
    def invariants_endpoint(body: FamilySelector) -> dict:
        bd = _resolve(body)
        try:
            return to_envelope(invariants(bd))
        except (GroupNotExponentTwo, NonIsolatedBaseLocus) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/quotients", response_model=EnvelopeOut)
    def quotients_endpoint(body: QuotientsIn) -> dict:
        bd = _resolve(body)
        try:
            if body.towers:
                return to_envelope(k3_towers(bd))
            reports = all_quotient_reports(bd)
        except GroupNotExponentTwo as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if body.only_k3:
            reports = [r for r in reports if r.label.kind == "K3"]
        return to_envelope(reports)

    @app.post("/burgers", response_model=EnvelopeOut)
    def burgers_endpoint(body: FamilySelector) -> dict:
        bd = _resolve(body)
        try:
            return to_envelope(burger_check(bd))
        except (GroupNotExponentTwo, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/equations", response_model=EnvelopeOut)
    def equations_endpoint(body: EquationsIn) -> dict:
        bd = _resolve(body)
        try:
            model = build_model(bd)
        except (GroupNotExponentTwo, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if body.eliminate:
            model = eliminate(model)
        return to_envelope(model)

    @app.post("/verify", response_model=VerifyOut)
    def verify_endpoint(body: VerifyIn) -> VerifyOut:
        try:
            results = verify_mod.run(sections=body.sections, jobs=body.jobs)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        failures = sum(1 for r in results if not r.ok)
        return VerifyOut(
            ok=failures == 0,
            checks=len(results),
            failures=failures,
            report=verify_mod.format_report(results),
        )

    return app
