"""Exhaustive search for smooth (Z/2)^k covers of the plane with genus three.

The search reproduces the eleven families, their invariant table, and the
dimension of each family's moduli; labels are assigned by matching invariant
signatures against the hard-coded expected table.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product

import numpy as np

from .building import (
    BuildingDataNumeric,
    base_point_count,
    canonical_map_degree,
    d_from_l,
    data_z2,
    k_squared,
    pg,
    validate,
)
from .errors import NonIsolatedBaseLocus, UnknownFamily
from .groups import MAX_RANK, find_isomorphism

TYPE_A = "A"
TYPE_B = "B"
TYPE_C = "C"
NOT_GENUS_THREE = "NotGenusThree"


def detect_type(k: int, l) -> str:
    """Shape of a genus-3 degree vector: A, B, C, or NotGenusThree.

    A: a single character of degree 4.  B: three degree-3 characters summing
    to zero.  C: three independent degree-3 characters.  The special
    characters may sit anywhere, not only at the standard basis.
    """
    l = tuple(int(v) for v in l)
    if len(l) != 1 << k:
        raise ValueError(f"expected a vector of length {1 << k}")
    if l[0] != 0 or any(not 1 <= v <= 4 for v in l[1:]):
        raise ValueError("expected l(0) = 0 and l(chi) in [1, 4] elsewhere")
    genus = sum(1 if v == 3 else 3 if v == 4 else 0 for v in l)
    if genus != 3:
        return NOT_GENUS_THREE
    big = [chi for chi, v in enumerate(l) if v >= 3]
    if len(big) == 1:
        return TYPE_A
    a, b, c = big
    return TYPE_B if a ^ b ^ c == 0 else TYPE_C


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the family search: depth, shape toggles, parallelism."""

    k_max: int = MAX_RANK
    types: tuple[str, ...] = (TYPE_A, TYPE_B, TYPE_C)
    jobs: int = 1


@dataclass(frozen=True)
class FamilyDescriptor:
    """One family of covers with its degree vectors and numerical invariants."""

    label: str
    k: int
    type: str
    l: tuple[int, ...]
    d: tuple[int, ...]
    K2: int
    deg_canonical: int | None
    modular_dimension: int
    base_points: int | None
    d_total: int


def modular_dimension(bd: BuildingDataNumeric) -> int:
    """Moduli contributed by moving the branch curves: sum of dim|D_g| minus 8."""
    return sum(v * (v + 3) // 2 for v in bd.d) - 8


# label, k, l, d, modular dimension, K^2, canonical-map degree, base points
_TABLE: tuple[tuple[str, int, tuple[int, ...], tuple[int, ...], int, int, int, int], ...] = (
    ("A1", 1, (0, 4), (0, 8), 36, 2, 2, 0),
    ("A2", 2, (0, 2, 4, 2), (0, 0, 4, 4), 20, 4, 4, 0),
    ("A3", 3, (0, 2, 2, 2, 4, 2, 2, 2), (0, 0, 0, 0, 2, 2, 2, 2), 12, 8, 8, 0),
    (
        "A4",
        4,
        (0, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2, 2, 2),
        (0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1),
        8,
        16,
        16,
        0,
    ),
    ("B2", 2, (0, 3, 3, 3), (0, 3, 3, 3), 19, 9, 9, 0),
    ("C3", 3, (0, 3, 3, 2, 3, 2, 2, 1), (0, 0, 0, 2, 0, 2, 2, 2), 12, 8, 8, 0),
    (
        "C4",
        4,
        (0, 2, 3, 2, 3, 2, 2, 2, 3, 2, 2, 2, 2, 2, 1, 2),
        (0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1),
        8,
        16,
        16,
        0,
    ),
    ("D3", 3, (0, 3, 3, 1, 3, 1, 1, 2), (0, 0, 0, 1, 0, 1, 1, 4), 12, 2, 2, 0),
    (
        "D4",
        4,
        (0, 1, 3, 2, 3, 2, 1, 2, 3, 2, 1, 2, 1, 2, 2, 1),
        (0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 2, 2),
        8,
        4,
        4,
        0,
    ),
    (
        "D5",
        5,
        # fmt: off
        (0, 1, 1, 1, 3, 2, 2, 2, 3, 2, 2, 2, 1, 2, 2, 2,
         3, 2, 2, 2, 1, 2, 2, 2, 1, 2, 2, 2, 2, 1, 1, 1),
        (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0,
         0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1),
        # fmt: on
        6,
        8,
        8,
        0,
    ),
    ("E3", 3, (0, 3, 3, 2, 3, 2, 1, 2), (0, 1, 0, 1, 0, 1, 2, 3), 12, 8, 4, 4),
)


def family_table() -> list[FamilyDescriptor]:
    """The eleven expected families with their published invariants."""
    return [
        FamilyDescriptor(
            label=label,
            k=k,
            type=detect_type(k, l),
            l=l,
            d=d,
            K2=k2,
            deg_canonical=deg,
            modular_dimension=mod_dim,
            base_points=bp,
            d_total=sum(d),
        )
        for label, k, l, d, mod_dim, k2, deg, bp in _TABLE
    ]


def lookup(label: str) -> FamilyDescriptor:
    """The table entry with the given label."""
    for fd in family_table():
        if fd.label == label:
            return fd
    raise UnknownFamily(f"no family named {label!r}")


def family_data(label: str) -> BuildingDataNumeric:
    """Building data of a named family."""
    fd = lookup(label)
    return data_z2(fd.k, fd.l, fd.d, connected=True)


def _signature(k: int, l, d) -> tuple:
    return (k, tuple(sorted(l)), tuple(sorted(d)))


def _table_signatures() -> dict[tuple, str]:
    return {_signature(k, l, d): label for label, k, l, d, *_ in _TABLE}


def _basis_chars(k: int, count: int) -> tuple[int, ...]:
    return tuple(1 << (k - 1 - i) for i in range(count))


def _survivor_from_l(k: int, l: tuple[int, ...]) -> BuildingDataNumeric | None:
    tr = d_from_l(k, l)
    if not tr.ok:
        return None
    bd = data_z2(k, l, tr.as_integers(), connected=True)
    if validate(bd) or pg(bd) != 3:
        return None
    return bd


def _type_a_survivors(k: int, jobs: int) -> list[BuildingDataNumeric]:
    # With one character of degree 4, pairing any other character chi with
    # chi + e1 in the cover relations gives l(chi) + l(chi + e1) = 4 plus a
    # nonnegative branch mass, and genus 3 caps each summand at 2.  So both
    # sides are forced: there is exactly one candidate vector per k, and the
    # d-transform decides whether it survives.
    e1 = 1 << (k - 1)
    l = [2] * (1 << k)
    l[0] = 0
    l[e1] = 4
    bd = _survivor_from_l(k, tuple(l))
    return [bd] if bd else []


def _type_b_survivors(k: int, jobs: int) -> list[BuildingDataNumeric]:
    if k < 2:
        return []
    if k == 2:
        bd = _survivor_from_l(2, (0, 3, 3, 3))
        return [bd] if bd else []
    # Three dependent degree-3 characters force branch mass 3 onto each of
    # the three sectors pairing nontrivially with both e1 and e2, so the
    # total branch degree is at least 9; but the budget
    # (total l) = 2^(k-2) (total d) with the remaining degrees in [1, 2]
    # caps the total at 8 + 2^(2-k).  No candidate exists beyond k = 2.
    return []


def _type_c_survivors(k: int, jobs: int) -> list[BuildingDataNumeric]:
    if k < 3:
        return []
    out: list[BuildingDataNumeric] = []
    e1, e2, e3 = _basis_chars(k, 3)
    # Resolving the cover relations against the three degree-3 characters
    # splits the branch mass over the eight sectors cut out by their kernels
    # and leaves three consistent shapes.  Two of them determine the whole
    # degree vector, so they reduce to fixed templates: all three pairwise
    # characters of degree 2 with the triple character of degree 1, or one
    # pairwise character dropped to degree 1 with everything else at 2.
    base = [2] * (1 << k)
    base[0] = 0
    for ei in (e1, e2, e3):
        base[ei] = 3
    templates = []
    with_triple = base.copy()
    with_triple[e1 ^ e2 ^ e3] = 1
    templates.append(tuple(with_triple))
    for ci, cj in combinations((e1, e2, e3), 2):
        with_pair = base.copy()
        with_pair[ci ^ cj] = 1
        templates.append(tuple(with_pair))
    for l in templates:
        bd = _survivor_from_l(k, l)
        if bd:
            out.append(bd)
    out.extend(_heavy_sector_survivors(k, jobs))
    return out


def _walsh_rows(a: np.ndarray) -> np.ndarray:
    """Row-wise Walsh transform, same butterfly as building.walsh."""
    m, n = a.shape
    h = 1
    while h < n:
        a = a.reshape(m, n // (2 * h), 2, h)
        x = a[:, :, 0, :].copy()
        a[:, :, 0, :] += a[:, :, 1, :]
        a[:, :, 1, :] = x - a[:, :, 1, :]
        a = a.reshape(m, n)
        h *= 2
    return a


def _heavy_survivor_mask(k: int, d_rows: np.ndarray, specials: tuple[int, ...]) -> np.ndarray:
    n = 1 << k
    lq = 7 - _walsh_rows(d_rows.astype(np.int32, copy=True))  # 4*l when integral
    low = np.full(n, 4, dtype=np.int32)
    high = np.full(n, 8, dtype=np.int32)
    low[0] = high[0] = 0
    for chi in specials:
        low[chi] = high[chi] = 12
    ok = (lq % 4 == 0).all(axis=1)
    ok &= (lq >= low).all(axis=1)
    ok &= (lq <= high).all(axis=1)
    return ok


def _heavy_sector_survivors(k: int, jobs: int) -> list[BuildingDataNumeric]:
    """The third shape: all three pairwise characters of degree one.

    Its branch mass sits as 1+1+1 on the three two-character sectors and 4 on
    the all-odd sector, with the placement inside each sector free.  Every
    placement is enumerated; the Walsh transform recovers l, and a placement
    survives when l is integral with values in {1, 2} away from the three
    degree-3 characters.
    """
    n = 1 << k
    shift = k - 3
    sectors = {
        s: [g for g in range(n) if g >> shift == s]
        for s in (0b110, 0b101, 0b011, 0b111)
    }
    singles = list(product(sectors[0b110], sectors[0b101], sectors[0b011]))
    slabs = list(combinations_with_replacement(sectors[0b111], 4))
    base_arr = np.zeros((len(singles), n), dtype=np.int8)
    for i, placed in enumerate(singles):
        for g in placed:
            base_arr[i, g] = 1
    slab_arr = np.zeros((len(slabs), n), dtype=np.int8)
    for i, combo in enumerate(slabs):
        for g in combo:
            slab_arr[i, g] += 1
    d_all = (base_arr[:, None, :] + slab_arr[None, :, :]).reshape(-1, n)
    specials = _basis_chars(k, 3)
    if jobs > 1:
        chunks = np.array_split(d_all, jobs)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            masks = list(pool.map(lambda c: _heavy_survivor_mask(k, c, specials), chunks))
        mask = np.concatenate(masks)
    else:
        mask = _heavy_survivor_mask(k, d_all, specials)
    out = []
    for row in d_all[np.flatnonzero(mask)]:
        d = tuple(int(v) for v in row)
        lq = 7 - _walsh_rows(row[np.newaxis, :].astype(np.int32))[0]
        l = tuple(int(v) // 4 for v in lq)
        bd = data_z2(k, l, d, connected=True)
        bad = validate(bd)
        if bad or pg(bd) != 3:
            raise AssertionError(f"search produced inconsistent data: {bad}")
        out.append(bd)
    return out


_SEARCHERS = {
    TYPE_A: _type_a_survivors,
    TYPE_B: _type_b_survivors,
    TYPE_C: _type_c_survivors,
}


def _dedupe(k: int, survivors: list[BuildingDataNumeric]) -> list[BuildingDataNumeric]:
    ordered = sorted(survivors, key=lambda bd: (bd.d, bd.l))
    reps: list[BuildingDataNumeric] = []
    for bd in ordered:
        if all(find_isomorphism(k, rep.l, bd.l) is None for rep in reps):
            reps.append(bd)
    return reps


def _describe(label: str, bd: BuildingDataNumeric) -> FamilyDescriptor:
    k2, _, _ = k_squared(bd)
    try:
        bp = base_point_count(bd)
        deg = canonical_map_degree(bd)
    except NonIsolatedBaseLocus:
        bp = None
        deg = None
    return FamilyDescriptor(
        label=label,
        k=bd.k,
        type=detect_type(bd.k, bd.l),
        l=bd.l,
        d=bd.d,
        K2=int(k2),
        deg_canonical=deg,
        modular_dimension=modular_dimension(bd),
        base_points=bp,
        d_total=bd.d_total,
    )


def enumerate_families(config: SearchConfig | None = None) -> list[FamilyDescriptor]:
    """All genus-3 families with k <= k_max, deduplicated and labeled.

    Output is sorted by (k, type, d-vector) and is independent of the
    parallelism width.
    """
    cfg = config or SearchConfig()
    if not 1 <= cfg.k_max <= MAX_RANK:
        raise ValueError(f"k_max must be between 1 and {MAX_RANK}")
    unknown = set(cfg.types) - {TYPE_A, TYPE_B, TYPE_C}
    if unknown:
        raise ValueError(f"unknown type toggles: {sorted(unknown)}")
    jobs = max(1, int(cfg.jobs))
    table_sigs = _table_signatures()
    vectors = {label: (l, d) for label, _, l, d, *_ in _TABLE}
    descriptors: list[FamilyDescriptor] = []
    for k in range(1, cfg.k_max + 1):
        synthetic = 0
        for t in (TYPE_A, TYPE_B, TYPE_C):
            if t not in cfg.types:
                continue
            for bd in _dedupe(k, _SEARCHERS[t](k, jobs)):
                label = table_sigs.get(_signature(bd.k, bd.l, bd.d))
                if label is not None:
                    canonical_l, canonical_d = vectors[label]
                    if find_isomorphism(k, canonical_l, bd.l) is None:
                        raise AssertionError(
                            f"signature of {label} matched without an isomorphism"
                        )
                    bd = data_z2(k, canonical_l, canonical_d, connected=True)
                else:
                    synthetic += 1
                    label = f"X{k}-{synthetic}"
                descriptors.append(_describe(label, bd))
    descriptors.sort(key=lambda fd: (fd.k, fd.type, fd.d))
    return descriptors
