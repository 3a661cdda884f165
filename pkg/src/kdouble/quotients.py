"""Quotients of a cover by subgroups of its Galois group.

For every subgroup H the intermediate surface X/H is again an abelian cover
of the plane; its branch degrees are coset sums of the parent's, its
line-bundle degrees are the parent's restricted to the characters trivial on
H, and its only singularities (for generic branch curves) are A1 points
counted by a stabilizer argument.  On top of the per-subgroup reports sit
maximal chains of K3 quotients and the detection of triples of involutions
whose three quotients are K3 surfaces sharing the canonical space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .building import (
    BuildingDataNumeric,
    SurfaceInvariants,
    data_z2,
    invariants,
    l_from_d,
    pg,
)
from .errors import GroupNotExponentTwo
from .groups import (
    Subgroup,
    apply_matrix,
    contragredient,
    find_isomorphisms,
    subgroups,
)

KIND_DEL_PEZZO = "del-Pezzo-like"
KIND_K3 = "K3"
KIND_ENRIQUES = "Enriques"
KIND_GENERAL = "general-type"


@dataclass(frozen=True)
class SurfaceLabel:
    """Coarse class of a quotient surface, decided by (sign of c, p_g) only."""

    kind: str
    K2: int
    p_g: int
    nodes: int


@dataclass(frozen=True)
class QuotientReport:
    """Everything computed for one subgroup: data, invariants, label."""

    subgroup: Subgroup
    rank: int
    data: BuildingDataNumeric
    invariants: SurfaceInvariants
    label: SurfaceLabel


@dataclass(frozen=True)
class QuotientOrbit:
    """Subgroups identified by a symmetry of the cover share one report."""

    representative: QuotientReport
    subgroups: tuple[Subgroup, ...]

    @property
    def size(self) -> int:
        return len(self.subgroups)


@dataclass(frozen=True)
class K3Tower:
    """A maximal chain of subgroups whose quotients are all K3."""

    subgroups: tuple[Subgroup, ...]
    nodes: tuple[int, ...]
    involutions: tuple[int, ...]


@dataclass(frozen=True)
class BurgerTriple:
    """Three involutions with K3 quotients splitting the canonical space."""

    sigmas: tuple[int, int, int]
    surviving: tuple[int, int, int]
    reports: tuple[QuotientReport, QuotientReport, QuotientReport]


def _require_exponent_two(bd: BuildingDataNumeric) -> None:
    if not bd.group.is_exponent_two:
        raise GroupNotExponentTwo("quotient analysis needs (Z/2)^k")


def quotient_data(bd: BuildingDataNumeric, H: Subgroup) -> BuildingDataNumeric:
    """Building data of X/H on the quotient group G/H.

    G/H is identified with (Z/2)^m through the canonical basis of the
    characters vanishing on H; branch mass carried by elements of H itself
    becomes unbranched and is dropped.
    """
    _require_exponent_two(bd)
    G = bd.group
    phi = H.annihilator().basis
    m = len(phi)
    size = 1 << m

    def project(g: int) -> int:
        out = 0
        for i, chi in enumerate(phi):
            out |= ((chi & g).bit_count() & 1) << (m - 1 - i)
        return out

    l = [0] * size
    for mask in range(size):
        chi = 0
        for i in range(m):
            if mask >> (m - 1 - i) & 1:
                chi ^= phi[i]
        l[mask] = bd.l[chi]
    d = [0] * size
    for g in range(G.size):
        if g and not H.contains(g):
            d[project(g)] += bd.d[g]
    recovered = l_from_d(m, tuple(d))
    if not recovered.ok or recovered.as_integers() != tuple(l):
        raise AssertionError("quotient degrees do not recover the restricted l")
    return data_z2(m, tuple(l), tuple(d), connected=True)


def node_count(bd: BuildingDataNumeric, H: Subgroup) -> int:
    """A1 points of X/H: branch intersections whose reflection product falls in H.

    A transversal point of D_g and D_g' has stabilizer <g, g'> upstairs; its
    image is singular exactly when g + g' lies in H while g and g' do not,
    and then it is one A1 point per fiber orbit.
    """
    _require_exponent_two(bd)
    G = bd.group
    support = [g for g in range(1, G.size) if bd.d[g]]
    total = 0
    for g1, g2 in combinations(support, 2):
        if H.contains(g1) or H.contains(g2):
            continue
        if H.contains(g1 ^ g2):
            total += bd.d[g1] * bd.d[g2] * (1 << (G.rank - 1)) // H.order
    return total


def quotient_invariants(bd: BuildingDataNumeric, H: Subgroup) -> SurfaceInvariants:
    """Numerical invariants of X/H, nodes included."""
    return invariants(quotient_data(bd, H), nodes=node_count(bd, H))


def label(inv: SurfaceInvariants) -> SurfaceLabel:
    """Decision table on (sign of c, p_g)."""
    if inv.c < 0:
        kind = KIND_DEL_PEZZO
    elif inv.c > 0:
        kind = KIND_GENERAL
    elif inv.p_g == 1:
        kind = KIND_K3
    elif inv.p_g == 0:
        kind = KIND_ENRIQUES
    else:
        raise AssertionError(
            f"numerically trivial canonical class with p_g = {inv.p_g}"
        )
    return SurfaceLabel(kind=kind, K2=inv.K2, p_g=inv.p_g, nodes=inv.nodes)


def display_name(lbl: SurfaceLabel) -> str:
    """Human name for a label; decoration only, the kind is authoritative."""
    suffix = f" with {lbl.nodes} nodes" if lbl.nodes else ""
    if lbl.kind == KIND_DEL_PEZZO:
        if lbl.K2 == 9:
            return "projective plane" + suffix
        if lbl.K2 == 8 and lbl.nodes == 0:
            return "smooth quadric"
        return f"del Pezzo of degree {lbl.K2}" + suffix
    if lbl.kind == KIND_K3:
        return ("smooth K3" if not lbl.nodes else "K3") + suffix
    if lbl.kind == KIND_ENRIQUES:
        return "Enriques" + suffix
    if lbl.p_g == 0 and lbl.K2 == 2:
        return "numerical Campedelli" + suffix
    if lbl.K2 == 2 * lbl.p_g - 4:
        return f"Horikawa-type (p_g={lbl.p_g}, K^2={lbl.K2})" + suffix
    return f"general type (p_g={lbl.p_g}, K^2={lbl.K2})" + suffix


def _report(bd: BuildingDataNumeric, H: Subgroup) -> QuotientReport:
    qd = quotient_data(bd, H)
    inv = invariants(qd, nodes=node_count(bd, H))
    return QuotientReport(
        subgroup=H,
        rank=qd.k,
        data=qd,
        invariants=inv,
        label=label(inv),
    )


@lru_cache(maxsize=128)
def _all_reports(bd: BuildingDataNumeric) -> tuple[QuotientReport, ...]:
    out = [_report(bd, H) for H in subgroups(bd.group)]
    out.sort(key=lambda r: (r.subgroup.order, r.subgroup.basis))
    return tuple(out)


def all_quotient_reports(bd: BuildingDataNumeric) -> list[QuotientReport]:
    """One report per subgroup, trivial and full included, deterministic order."""
    return list(_all_reports(bd))


def automorphisms(bd: BuildingDataNumeric) -> list[tuple[int, ...]]:
    """All character-side matrices preserving the l-vector (hence the datum)."""
    _require_exponent_two(bd)
    return list(find_isomorphisms(bd.k, bd.l, bd.l))


def grouped_quotient_reports(bd: BuildingDataNumeric) -> list[QuotientOrbit]:
    """Reports grouped into orbits under the symmetries of the cover."""
    reports = {r.subgroup: r for r in _all_reports(bd)}
    k = bd.k
    G = bd.group
    actions = [contragredient(k, M) for M in automorphisms(bd)]
    seen: set[Subgroup] = set()
    orbits: list[QuotientOrbit] = []
    for H in sorted(reports, key=lambda s: (s.order, s.basis)):
        if H in seen:
            continue
        orbit = {
            Subgroup(G, frozenset(apply_matrix(k, N, h) for h in H.elements))
            for N in actions
        }
        seen.update(orbit)
        members = tuple(sorted(orbit, key=lambda s: (s.order, s.basis)))
        orbits.append(QuotientOrbit(representative=reports[members[0]], subgroups=members))
    return orbits


def k3_towers(bd: BuildingDataNumeric) -> list[K3Tower]:
    """All maximal chains of subgroups whose quotients are K3 surfaces.

    Consecutive steps of index two are double covers; the reported involution
    of the lower K3 is the smallest group element separating the two levels.
    """
    reports = {r.subgroup: r for r in _all_reports(bd)}
    k3s = [H for H, r in reports.items() if r.label.kind == KIND_K3]
    k3s.sort(key=lambda s: (s.order, s.basis))
    below = {
        H: [H2 for H2 in k3s if H2 != H and H2.elements < H.elements] for H in k3s
    }
    above = {
        H: [H2 for H2 in k3s if H2 != H and H.elements < H2.elements] for H in k3s
    }
    covers = {
        H: [
            H2
            for H2 in above[H]
            if not any(H3.elements < H2.elements for H3 in above[H] if H3 != H2)
        ]
        for H in k3s
    }
    chains: list[tuple[Subgroup, ...]] = []

    def extend(chain: tuple[Subgroup, ...]) -> None:
        nxt = covers[chain[-1]]
        if not nxt:
            chains.append(chain)
            return
        for H2 in nxt:
            extend(chain + (H2,))

    for H in k3s:
        if not below[H]:
            extend((H,))
    towers = []
    for chain in chains:
        involutions = tuple(
            min(chain[i + 1].elements - chain[i].elements)
            for i in range(len(chain) - 1)
        )
        nodes = tuple(reports[H].invariants.nodes for H in chain)
        towers.append(K3Tower(subgroups=chain, nodes=nodes, involutions=involutions))
    towers.sort(key=lambda t: tuple((H.order, H.basis) for H in t.subgroups))
    return towers


def burger_check(bd: BuildingDataNumeric) -> list[BurgerTriple]:
    """Triples of involutions whose quotients are three K3s sharing the genus.

    A triple qualifies when every quotient by one of the three involutions is
    a K3 and the three degree-3 characters survive one per involution.
    """
    _require_exponent_two(bd)
    if pg(bd) != 3:
        raise ValueError("burger detection is defined for p_g = 3 covers")
    reports = {r.subgroup: r for r in _all_reports(bd)}
    G = bd.group
    big = [chi for chi, v in enumerate(bd.l) if v == 3]
    candidates: list[tuple[int, QuotientReport, int]] = []
    for sigma in range(1, G.size):
        H = Subgroup.from_generators(G, (sigma,))
        rep = reports[H]
        if rep.label.kind != KIND_K3:
            continue
        surviving = [chi for chi in big if (chi & sigma).bit_count() & 1 == 0]
        if len(surviving) != 1:
            continue
        candidates.append((sigma, rep, surviving[0]))
    out = []
    for (s0, r0, c0), (s1, r1, c1), (s2, r2, c2) in combinations(candidates, 3):
        if len({c0, c1, c2}) == 3:
            out.append(
                BurgerTriple(sigmas=(s0, s1, s2), surviving=(c0, c1, c2), reports=(r0, r1, r2))
            )
    out.sort(key=lambda b: b.sigmas)
    return out
