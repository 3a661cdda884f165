"""Numeric building data of abelian covers of projective space and its invariant formulas.

Degree vectors are tuples indexed by the integer encoding of characters
(``l``) and group elements (``d``) from :mod:`kdouble.groups`.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb

from .errors import GroupNotExponentTwo, NonIsolatedBaseLocus
from .groups import (
    FiniteAbelianGroup,
    Subgroup,
    element_order,
    group_z2,
    kernel_of_element,
    r_coeff,
    restricted_order,
)

K_ANTI_AMPLE = "anti-ample"
K_TRIVIAL = "numerically-trivial"
K_POSITIVE = "positive"


@dataclass(frozen=True)
class BuildingDataNumeric:
    """Branch and line-bundle degrees of an abelian cover of P^n."""

    group: FiniteAbelianGroup
    l: tuple[int, ...]
    d: tuple[int, ...]
    base_dim: int = 2
    connected: bool = False

    def __post_init__(self) -> None:
        size = self.group.size
        if len(self.l) != size or len(self.d) != size:
            raise ValueError(f"degree vectors must have length {size}")
        object.__setattr__(self, "l", tuple(int(v) for v in self.l))
        object.__setattr__(self, "d", tuple(int(v) for v in self.d))

    @property
    def k(self) -> int:
        return self.group.rank

    @property
    def d_total(self) -> int:
        return sum(self.d)

    def with_connected(self, flag: bool) -> "BuildingDataNumeric":
        return replace(self, connected=flag)


def data_z2(k: int, l, d, base_dim: int = 2, connected: bool = True) -> BuildingDataNumeric:
    """Convenience constructor over (Z/2)^k."""
    return BuildingDataNumeric(group_z2(k), tuple(l), tuple(d), base_dim, connected)


@dataclass(frozen=True)
class TransformResult:
    """Exact output of a degree transform plus integrality/nonnegativity diagnostics."""

    values: tuple[Fraction, ...]
    non_integral: tuple[int, ...]
    negative: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.non_integral and not self.negative

    def as_integers(self) -> tuple[int, ...]:
        if not self.ok:
            raise ValueError(
                f"transform output is not a valid degree vector "
                f"(non-integral at {self.non_integral}, negative at {self.negative})"
            )
        return tuple(int(v) for v in self.values)


def _as_group(G_or_k: FiniteAbelianGroup | int) -> FiniteAbelianGroup:
    return group_z2(G_or_k) if isinstance(G_or_k, int) else G_or_k


def walsh(values) -> list[int]:
    """In-place-style Walsh transform: out[g] = sum_chi (-1)^<chi,g> values[chi]."""
    out = list(values)
    n = len(out)
    h = 1
    while h < n:
        for i in range(0, n, h * 2):
            for j in range(i, i + h):
                x, y = out[j], out[j + h]
                out[j], out[j + h] = x + y, x - y
        h *= 2
    return out


def l_from_d(G_or_k, d, *_) -> TransformResult:
    """Line-bundle degrees determined by branch degrees: l(chi) = sum_g (r_g^chi / o(g)) d(g)."""
    G = _as_group(G_or_k)
    if d[0] != 0:
        raise ValueError("d(identity) must be 0")
    if G.is_exponent_two:
        w = walsh(d)
        total = sum(d)
        values = tuple(Fraction(total - w[chi], 4) for chi in range(G.size))
    else:
        support = [g for g in G.elements() if d[g]]
        values = tuple(
            sum(
                (Fraction(r_coeff(G, g, chi) * d[g], element_order(G, g)) for g in support),
                Fraction(0),
            )
            for chi in G.elements()
        )
    non_integral = tuple(i for i, v in enumerate(values) if v.denominator != 1)
    negative = tuple(i for i, v in enumerate(values) if v < 0)
    return TransformResult(values, non_integral, negative)


def d_from_l(G_or_k, l) -> TransformResult:
    """Branch degrees recovered from line-bundle degrees over (Z/2)^k.

    d(g) = (sum of l outside ker g - sum of l inside ker g) / 2^(k-2) for g != 0,
    and d(identity) = 0 by definition.
    """
    G = _as_group(G_or_k)
    if not G.is_exponent_two:
        raise GroupNotExponentTwo(
            "recovering d from l needs (Z/2)^k; with larger cyclic factors "
            "different d give the same l"
        )
    if l[0] != 0:
        raise ValueError("l(trivial character) must be 0")
    k = G.rank
    w = walsh(l)
    values = tuple(
        Fraction(0) if g == 0 else Fraction(-w[g] * 4, 1 << k) for g in range(G.size)
    )
    non_integral = tuple(i for i, v in enumerate(values) if v.denominator != 1)
    negative = tuple(i for i, v in enumerate(values) if v < 0)
    return TransformResult(values, non_integral, negative)


@dataclass(frozen=True)
class Violation:
    """One failed structural condition or cover relation."""

    kind: str
    pair: tuple[int, int] | None = None
    index: int | None = None
    lhs: object = None
    rhs: object = None

    def __str__(self) -> str:
        if self.kind == "relation":
            return f"l{self.pair[0]} + l{self.pair[1]} = {self.lhs} != {self.rhs}"
        return f"{self.kind} at {self.index}"


def validate(bd: BuildingDataNumeric) -> list[Violation]:
    """All failures of the cover relations l(x)+l(y) = l(x+y) + sum_g eps(x,y,g) d(g)."""
    G = bd.group
    out: list[Violation] = []
    if bd.l[0] != 0:
        out.append(Violation("l_trivial_nonzero", index=0, lhs=bd.l[0], rhs=0))
    if bd.d[0] != 0:
        out.append(Violation("d_identity_nonzero", index=0, lhs=bd.d[0], rhs=0))
    out += [Violation("negative_l", index=i) for i, v in enumerate(bd.l) if v < 0]
    out += [Violation("negative_d", index=i) for i, v in enumerate(bd.d) if v < 0]
    if bd.connected:
        out += [
            Violation("disconnected", index=chi)
            for chi in range(1, G.size)
            if bd.l[chi] < 1
        ]
    support = [g for g in G.elements() if bd.d[g]]
    exp2 = G.is_exponent_two
    for chi1 in range(1, G.size):
        for chi2 in range(chi1, G.size):
            if exp2:
                eps_sum = sum(
                    bd.d[g]
                    for g in support
                    if (chi1 & g).bit_count() & 1 and (chi2 & g).bit_count() & 1
                )
                chi12 = chi1 ^ chi2
            else:
                eps_sum = sum(
                    bd.d[g]
                    for g in support
                    if r_coeff(G, g, chi1) + r_coeff(G, g, chi2) >= element_order(G, g)
                )
                chi12 = G.add(chi1, chi2)
            lhs = bd.l[chi1] + bd.l[chi2]
            rhs = bd.l[chi12] + eps_sum
            if lhs != rhs:
                out.append(Violation("relation", pair=(chi1, chi2), lhs=lhs, rhs=rhs))
    return out


@dataclass(frozen=True)
class SumIdentityReport:
    """Exact check of the two global degree identities."""

    total_ok: bool
    per_element: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return self.total_ok and all(self.per_element)


def check_sum_identities(bd: BuildingDataNumeric) -> SumIdentityReport:
    """sum_chi l = (|G|/2) sum_g (1-1/o(g)) d(g), and its kernel-restricted version per g."""
    G = bd.group
    lhs = sum(bd.l)
    rhs = Fraction(G.size, 2) * sum(
        (Fraction(bd.d[g]) * (1 - Fraction(1, element_order(G, g))) for g in G.elements()),
        Fraction(0),
    )
    per_element = []
    for g in G.elements():
        ker_g = kernel_of_element(G, g)
        lhs_g = sum(bd.l[chi] for chi in ker_g.elements)
        rhs_g = Fraction(G.size, 2 * element_order(G, g)) * sum(
            (
                Fraction(bd.d[h]) * (1 - Fraction(1, restricted_order(G, ker_g, h)))
                for h in G.elements()
            ),
            Fraction(0),
        )
        per_element.append(lhs_g == rhs_g)
    return SumIdentityReport(lhs == rhs, tuple(per_element))


def subgroup_sum_identity(G_or_k, d, chars: Subgroup) -> tuple[Fraction, Fraction]:
    """Both sides of the degree identity restricted to a subgroup of characters.

    With l induced from d, the sum of l over any subgroup of characters equals
    (|chars| / 2) * sum_h (1 - 1/o(h)) d(h), where o(h) is the order of the
    restriction of h to that subgroup.  The two members are returned exactly;
    they agree for every nonnegative d, integral or not.
    """
    G = _as_group(G_or_k)
    l = l_from_d(G, d).values
    lhs = sum((l[chi] for chi in chars.elements), Fraction(0))
    rhs = Fraction(chars.order, 2) * sum(
        (
            Fraction(d[h]) * (1 - Fraction(1, restricted_order(G, chars, h)))
            for h in G.elements()
        ),
        Fraction(0),
    )
    return lhs, rhs


def _h0(m: int, n: int) -> int:
    return comb(m + n, n) if m >= 0 else 0


def pg(bd: BuildingDataNumeric) -> int:
    """Geometric genus: sum over characters of h^0(P^n, O(l(chi) - n - 1))."""
    n = bd.base_dim
    return sum(_h0(v - n - 1, n) for v in bd.l)


def irregularity(bd: BuildingDataNumeric) -> int:
    """Always zero for covers of projective space."""
    return 0


def chi_o(bd: BuildingDataNumeric) -> int:
    return 1 + pg(bd)


def k_squared(bd: BuildingDataNumeric) -> tuple[int | Fraction, Fraction, str]:
    """(K^2, canonical pullback coefficient c, sign of K) with K^2 = 2^k c^2."""
    G = bd.group
    if not G.is_exponent_two:
        raise GroupNotExponentTwo("the K^2 formula needs (Z/2)^k")
    if bd.base_dim != 2:
        raise ValueError("the K^2 formula is for covers of the plane")
    c = Fraction(bd.d_total, 2) - 3
    k2 = (1 << G.rank) * c * c
    sign = K_ANTI_AMPLE if c < 0 else K_TRIVIAL if c == 0 else K_POSITIVE
    return (int(k2) if k2.denominator == 1 else k2), c, sign


def canonical_degree_set(bd: BuildingDataNumeric) -> tuple[int, ...]:
    """Characters with l >= 3 (the ones whose sections carry the canonical system)."""
    n = bd.base_dim
    return tuple(chi for chi, v in enumerate(bd.l) if v >= n + 1)


def hitting_sets(bd: BuildingDataNumeric) -> list[tuple[int, ...]]:
    """Size-<=2 sets of branch elements meeting the kernel of every degree->=3 character."""
    G = bd.group
    if not G.is_exponent_two:
        raise GroupNotExponentTwo("base-locus analysis needs (Z/2)^k")
    if bd.base_dim != 2:
        raise ValueError("base-locus analysis is for covers of the plane")
    if pg(bd) == 0:
        raise ValueError("the canonical system is empty when p_g = 0")
    big = canonical_degree_set(bd)
    support = [g for g in G.elements() if bd.d[g] and g]

    def in_ker(chi: int, g: int) -> bool:
        return (chi & g).bit_count() & 1 == 0

    out: list[tuple[int, ...]] = []
    for g in support:
        if all(in_ker(chi, g) for chi in big):
            out.append((g,))
    for i, g1 in enumerate(support):
        for g2 in support[i + 1 :]:
            if all(in_ker(chi, g1) or in_ker(chi, g2) for chi in big):
                out.append((g1, g2))
    return out


def is_bpf(bd: BuildingDataNumeric) -> bool:
    """True iff the canonical system has no base point."""
    return not hitting_sets(bd)


def base_point_count(bd: BuildingDataNumeric) -> int:
    """Number of canonical base points: sum over hitting pairs of 2^(k-2) d(g1) d(g2)."""
    sets = hitting_sets(bd)
    singles = [s for s in sets if len(s) == 1]
    if singles:
        raise NonIsolatedBaseLocus(
            f"whole branch components lie in the base locus: {singles}"
        )
    k = bd.k
    return sum((1 << k) // 4 * bd.d[g1] * bd.d[g2] for g1, g2 in sets)


def canonical_map_degree(bd: BuildingDataNumeric) -> int:
    """Degree of the canonical map when p_g = 3: K^2 minus the base-point count."""
    if pg(bd) != 3:
        raise ValueError("the canonical map degree is defined here only for p_g = 3")
    k2, _, _ = k_squared(bd)
    return int(k2) - base_point_count(bd)


@dataclass(frozen=True)
class SurfaceInvariants:
    """Numerical invariants of the covering surface (or of a quotient)."""

    p_g: int
    q: int
    chi_O: int
    K2: int
    c: Fraction
    K_sign: str
    base_points: int | None
    deg_canonical: int | None
    nodes: int = 0


def invariants(bd: BuildingDataNumeric, nodes: int = 0) -> SurfaceInvariants:
    """Assemble all numerical invariants of the cover described by bd."""
    p = pg(bd)
    k2, c, sign = k_squared(bd)
    base_points = None
    deg = None
    if p >= 1:
        try:
            base_points = base_point_count(bd)
        except NonIsolatedBaseLocus:
            base_points = None
        if p == 3 and base_points is not None:
            deg = int(k2) - base_points
    return SurfaceInvariants(
        p_g=p,
        q=0,
        chi_O=1 + p,
        K2=int(k2),
        c=c,
        K_sign=sign,
        base_points=base_points,
        deg_canonical=deg,
        nodes=nodes,
    )
