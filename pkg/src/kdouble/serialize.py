"""JSON encoding for every public result type.

Every document is an envelope {"schema_version": "1", "kind": ..., "payload":
...}.  Vectors are arrays indexed by bitmask, subgroups are arrays of basis
bitmasks, exact rationals are [numerator, denominator] pairs.  Encoding is
deterministic (sorted keys, fixed indentation) so repeated runs are
byte-identical, and parse(render(x)) == x for every supported type.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .building import BuildingDataNumeric, SurfaceInvariants
from .classify import FamilyDescriptor
from .equations import MonomialEquation, WeightedModel
from .errors import UnknownFormat
from .groups import FiniteAbelianGroup, Subgroup
from .quotients import BurgerTriple, K3Tower, QuotientReport, SurfaceLabel

SCHEMA_VERSION = "1"

KIND_BUILDING_DATA = "building_data"
KIND_FAMILY = "family"
KIND_INVARIANTS = "invariants"
KIND_QUOTIENT_REPORT = "quotient_report"
KIND_K3_TOWER = "k3_tower"
KIND_BURGER_TRIPLE = "burger_triple"
KIND_WEIGHTED_MODEL = "weighted_model"
KIND_LIST = "list"


def _fraction(value: Fraction) -> list[int]:
    return [value.numerator, value.denominator]


def _building_payload(bd: BuildingDataNumeric) -> dict[str, Any]:
    return {
        "orders": list(bd.group.orders),
        "l": list(bd.l),
        "d": list(bd.d),
        "base_dim": bd.base_dim,
        "connected": bd.connected,
    }


def _building_from(payload: dict[str, Any]) -> BuildingDataNumeric:
    return BuildingDataNumeric(
        group=FiniteAbelianGroup(tuple(payload["orders"])),
        l=tuple(payload["l"]),
        d=tuple(payload["d"]),
        base_dim=payload.get("base_dim", 2),
        connected=payload.get("connected", False),
    )


def _family_payload(fam: FamilyDescriptor) -> dict[str, Any]:
    return {
        "label": fam.label,
        "k": fam.k,
        "type": fam.type,
        "l": list(fam.l),
        "d": list(fam.d),
        "k_squared": fam.K2,
        "deg_canonical": fam.deg_canonical,
        "modular_dimension": fam.modular_dimension,
        "base_points": fam.base_points,
        "d_total": fam.d_total,
    }


def _family_from(payload: dict[str, Any]) -> FamilyDescriptor:
    return FamilyDescriptor(
        label=payload["label"],
        k=payload["k"],
        type=payload["type"],
        l=tuple(payload["l"]),
        d=tuple(payload["d"]),
        K2=payload["k_squared"],
        deg_canonical=payload["deg_canonical"],
        modular_dimension=payload["modular_dimension"],
        base_points=payload["base_points"],
        d_total=payload["d_total"],
    )


def _invariants_payload(inv: SurfaceInvariants) -> dict[str, Any]:
    return {
        "p_g": inv.p_g,
        "q": inv.q,
        "chi_O": inv.chi_O,
        "k_squared": inv.K2,
        "c": _fraction(inv.c),
        "k_sign": inv.K_sign,
        "base_points": inv.base_points,
        "deg_canonical": inv.deg_canonical,
        "nodes": inv.nodes,
    }


def _invariants_from(payload: dict[str, Any]) -> SurfaceInvariants:
    num, den = payload["c"]
    return SurfaceInvariants(
        p_g=payload["p_g"],
        q=payload["q"],
        chi_O=payload["chi_O"],
        K2=payload["k_squared"],
        c=Fraction(num, den),
        K_sign=payload["k_sign"],
        base_points=payload["base_points"],
        deg_canonical=payload["deg_canonical"],
        nodes=payload["nodes"],
    )


def _label_payload(lbl: SurfaceLabel) -> dict[str, Any]:
    return {"kind": lbl.kind, "k_squared": lbl.K2, "p_g": lbl.p_g, "nodes": lbl.nodes}


def _label_from(payload: dict[str, Any]) -> SurfaceLabel:
    return SurfaceLabel(
        kind=payload["kind"],
        K2=payload["k_squared"],
        p_g=payload["p_g"],
        nodes=payload["nodes"],
    )


def _subgroup_payload(H: Subgroup) -> dict[str, Any]:
    return {"orders": list(H.group.orders), "basis": list(H.basis)}


def _subgroup_from(payload: dict[str, Any]) -> Subgroup:
    G = FiniteAbelianGroup(tuple(payload["orders"]))
    return Subgroup.from_generators(G, tuple(payload["basis"]))


def _report_payload(rep: QuotientReport) -> dict[str, Any]:
    return {
        "subgroup": _subgroup_payload(rep.subgroup),
        "rank": rep.rank,
        "data": _building_payload(rep.data),
        "invariants": _invariants_payload(rep.invariants),
        "label": _label_payload(rep.label),
    }


def _report_from(payload: dict[str, Any]) -> QuotientReport:
    return QuotientReport(
        subgroup=_subgroup_from(payload["subgroup"]),
        rank=payload["rank"],
        data=_building_from(payload["data"]),
        invariants=_invariants_from(payload["invariants"]),
        label=_label_from(payload["label"]),
    )


def _tower_payload(tower: K3Tower) -> dict[str, Any]:
    return {
        "subgroups": [_subgroup_payload(H) for H in tower.subgroups],
        "nodes": list(tower.nodes),
        "involutions": list(tower.involutions),
    }


def _tower_from(payload: dict[str, Any]) -> K3Tower:
    return K3Tower(
        subgroups=tuple(_subgroup_from(p) for p in payload["subgroups"]),
        nodes=tuple(payload["nodes"]),
        involutions=tuple(payload["involutions"]),
    )


def _burger_payload(burger: BurgerTriple) -> dict[str, Any]:
    return {
        "sigmas": list(burger.sigmas),
        "surviving": list(burger.surviving),
        "reports": [_report_payload(rep) for rep in burger.reports],
    }


def _burger_from(payload: dict[str, Any]) -> BurgerTriple:
    reports = tuple(_report_from(p) for p in payload["reports"])
    return BurgerTriple(
        sigmas=tuple(payload["sigmas"]),
        surviving=tuple(payload["surviving"]),
        reports=reports,
    )


def _model_payload(model: WeightedModel) -> dict[str, Any]:
    return {
        "k": model.k,
        "base_dim": model.base_dim,
        "l": list(model.l),
        "d": list(model.d),
        "y_chars": list(model.y_chars),
        "equations": [
            {"lhs": list(eq.lhs), "rhs_y": list(eq.rhs_y), "rhs_f": list(eq.rhs_f)}
            for eq in model.equations
        ],
    }


def _model_from(payload: dict[str, Any]) -> WeightedModel:
    return WeightedModel(
        k=payload["k"],
        base_dim=payload["base_dim"],
        l=tuple(payload["l"]),
        d=tuple(payload["d"]),
        y_chars=tuple(payload["y_chars"]),
        equations=tuple(
            MonomialEquation(
                lhs=tuple(eq["lhs"]),
                rhs_y=tuple(eq["rhs_y"]),
                rhs_f=tuple(eq["rhs_f"]),
            )
            for eq in payload["equations"]
        ),
    )


_ENCODERS = (
    (BuildingDataNumeric, KIND_BUILDING_DATA, _building_payload),
    (FamilyDescriptor, KIND_FAMILY, _family_payload),
    (SurfaceInvariants, KIND_INVARIANTS, _invariants_payload),
    (QuotientReport, KIND_QUOTIENT_REPORT, _report_payload),
    (K3Tower, KIND_K3_TOWER, _tower_payload),
    (BurgerTriple, KIND_BURGER_TRIPLE, _burger_payload),
    (WeightedModel, KIND_WEIGHTED_MODEL, _model_payload),
)

_DECODERS = {
    KIND_BUILDING_DATA: _building_from,
    KIND_FAMILY: _family_from,
    KIND_INVARIANTS: _invariants_from,
    KIND_QUOTIENT_REPORT: _report_from,
    KIND_K3_TOWER: _tower_from,
    KIND_BURGER_TRIPLE: _burger_from,
    KIND_WEIGHTED_MODEL: _model_from,
}


def to_envelope(obj: Any) -> dict[str, Any]:
    """Wrap a supported object (or list of them) in a schema envelope."""
    if isinstance(obj, (list, tuple)):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": KIND_LIST,
            "payload": [to_envelope(item) for item in obj],
        }
    for cls, kind, encode in _ENCODERS:
        if isinstance(obj, cls):
            return {
                "schema_version": SCHEMA_VERSION,
                "kind": kind,
                "payload": encode(obj),
            }
    raise UnknownFormat(f"cannot serialize {type(obj).__name__}")


def from_envelope(doc: dict[str, Any]) -> Any:
    """Inverse of to_envelope."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise UnknownFormat(f"unsupported schema version {doc.get('schema_version')!r}")
    kind = doc.get("kind")
    if kind == KIND_LIST:
        return [from_envelope(item) for item in doc["payload"]]
    if kind not in _DECODERS:
        raise UnknownFormat(f"unknown document kind {kind!r}")
    return _DECODERS[kind](doc["payload"])


def to_json(obj: Any) -> str:
    """Deterministic JSON text for a supported object."""
    return json.dumps(to_envelope(obj), indent=2, sort_keys=True)


def from_json(text: str) -> Any:
    """Parse JSON text produced by to_json (or hand-written to the schema)."""
    return from_envelope(json.loads(text))


def building_data_from_json(text: str) -> BuildingDataNumeric:
    """Parse ad-hoc input data; accepts bare payloads without an envelope."""
    doc = json.loads(text)
    if "schema_version" in doc:
        obj = from_envelope(doc)
        if not isinstance(obj, BuildingDataNumeric):
            raise UnknownFormat("expected a building_data document")
        return obj
    return _building_from(doc)
