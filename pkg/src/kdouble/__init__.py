"""Exact classification and analysis of smooth (Z/2)^k covers of the plane
with geometric genus three.

The package enumerates all eleven families of such covers, computes their
numerical invariants and weighted-projective equation models, analyses every
intermediate quotient surface (K3 / Enriques / del-Pezzo-like / general type,
with node counts), finds towers of K3 quotients, and detects triples of
involutions whose three K3 quotients split the canonical space.
"""

from .building import (
    BuildingDataNumeric,
    SumIdentityReport,
    SurfaceInvariants,
    TransformResult,
    Violation,
    base_point_count,
    canonical_map_degree,
    check_sum_identities,
    d_from_l,
    data_z2,
    invariants,
    is_bpf,
    l_from_d,
    pg,
    subgroup_sum_identity,
    validate,
)
from .classify import (
    FamilyDescriptor,
    SearchConfig,
    detect_type,
    enumerate_families,
    family_data,
    family_table,
    lookup,
    modular_dimension,
)
from .equations import (
    MonomialEquation,
    WeightedModel,
    ambient_weights,
    build_model,
    check_homogeneous,
    eliminate,
    render,
)
from .errors import (
    GroupNotExponentTwo,
    KDoubleError,
    NonIsolatedBaseLocus,
    UnknownFamily,
    UnknownFormat,
)
from .groups import FiniteAbelianGroup, Subgroup, group_z2, subgroups_z2
from .quotients import (
    BurgerTriple,
    K3Tower,
    QuotientOrbit,
    QuotientReport,
    SurfaceLabel,
    all_quotient_reports,
    burger_check,
    display_name,
    grouped_quotient_reports,
    k3_towers,
    node_count,
    quotient_data,
    quotient_invariants,
)
from .serialize import from_json, to_json

__version__ = "0.1.0"

__all__ = [
    "BuildingDataNumeric",
    "BurgerTriple",
    "FamilyDescriptor",
    "FiniteAbelianGroup",
    "GroupNotExponentTwo",
    "K3Tower",
    "KDoubleError",
    "MonomialEquation",
    "NonIsolatedBaseLocus",
    "QuotientOrbit",
    "QuotientReport",
    "SearchConfig",
    "Subgroup",
    "SumIdentityReport",
    "SurfaceInvariants",
    "SurfaceLabel",
    "TransformResult",
    "UnknownFamily",
    "UnknownFormat",
    "Violation",
    "WeightedModel",
    "all_quotient_reports",
    "ambient_weights",
    "base_point_count",
    "build_model",
    "burger_check",
    "canonical_map_degree",
    "check_homogeneous",
    "check_sum_identities",
    "d_from_l",
    "data_z2",
    "detect_type",
    "display_name",
    "eliminate",
    "enumerate_families",
    "family_data",
    "family_table",
    "from_json",
    "group_z2",
    "grouped_quotient_reports",
    "invariants",
    "is_bpf",
    "k3_towers",
    "l_from_d",
    "lookup",
    "modular_dimension",
    "node_count",
    "pg",
    "quotient_data",
    "quotient_invariants",
    "render",
    "subgroup_sum_identity",
    "subgroups_z2",
    "to_json",
    "validate",
]
