"""Exact arithmetic for finite abelian groups, characters, subgroups, and GL(k,F2) utilities.

Elements and characters are encoded as integers.  For a group with cyclic
factors of orders (n_1, ..., n_m) the integer is read mixed-radix with the
first factor most significant; when every factor has order two this is the
plain bitmask whose most significant bit is coordinate 1, so rendering an
element with ``f"{g:0{k}b}"`` lists its coordinates left to right.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd, lcm, prod

from .errors import GroupNotExponentTwo

MAX_RANK = 6


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups Z/n_1 x ... x Z/n_m given by its factor orders."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(n < 2 for n in self.orders):
            raise ValueError("every cyclic factor must have order at least 2")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @property
    def is_exponent_two(self) -> bool:
        return all(n == 2 for n in self.orders)

    def elements(self) -> range:
        return range(self.size)

    def coords(self, x: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.orders):
            out.append(x % n)
            x //= n
        return tuple(reversed(out))

    def from_coords(self, coords: tuple[int, ...]) -> int:
        x = 0
        for n, c in zip(self.orders, coords):
            x = x * n + c % n
        return x

    def add(self, a: int, b: int) -> int:
        if self.is_exponent_two:
            return a ^ b
        return self.from_coords(
            tuple(u + v for u, v in zip(self.coords(a), self.coords(b)))
        )

    def neg(self, a: int) -> int:
        if self.is_exponent_two:
            return a
        return self.from_coords(tuple(-u for u in self.coords(a)))

    def chi_value(self, chi: int, g: int) -> Fraction:
        """Value chi(g) in Q/Z, returned as a reduced fraction in [0, 1)."""
        if self.is_exponent_two:
            return Fraction((chi & g).bit_count() & 1, 2)
        total = sum(
            Fraction(c * e, n)
            for c, e, n in zip(self.coords(chi), self.coords(g), self.orders)
        )
        return total - (total.numerator // total.denominator)

    def pairing(self, chi: int, g: int) -> int:
        """The F2 pairing <chi, g> for exponent-2 groups."""
        if not self.is_exponent_two:
            raise GroupNotExponentTwo("the F2 pairing needs an exponent-2 group")
        return (chi & g).bit_count() & 1


def group_z2(k: int) -> FiniteAbelianGroup:
    """The elementary abelian group (Z/2)^k."""
    return FiniteAbelianGroup((2,) * k)


def element_order(G: FiniteAbelianGroup, g: int) -> int:
    """Least t >= 1 with t*g = 0."""
    if G.is_exponent_two:
        return 2 if g else 1
    return lcm(*(n // gcd(c, n) for n, c in zip(G.orders, G.coords(g))))


def r_coeff(G: FiniteAbelianGroup, g: int, chi: int) -> int:
    """The unique r in [0, o(g)) with chi(g) = r/o(g) in Q/Z."""
    o = element_order(G, g)
    value = G.chi_value(chi, g) * o
    if value.denominator != 1:
        raise AssertionError(f"o(g)*chi(g) = {value} is not an integer")
    return value.numerator


def epsilon(G: FiniteAbelianGroup, chi1: int, chi2: int, g: int) -> int:
    """Carry bit of adding the two r-coefficients at g: 1 iff r1 + r2 >= o(g)."""
    return 1 if r_coeff(G, g, chi1) + r_coeff(G, g, chi2) >= element_order(G, g) else 0


def weight(G: FiniteAbelianGroup, g: int) -> int:
    """Number of nonzero coordinates of g."""
    if G.is_exponent_two:
        return g.bit_count()
    return sum(1 for c in G.coords(g) if c)


def partial_weight(G: FiniteAbelianGroup, g: int, h: int) -> int:
    """Number of nonzero coordinates among the first h."""
    if not 0 <= h <= G.rank:
        raise ValueError(f"partial weight needs 0 <= h <= {G.rank}, got {h}")
    if G.is_exponent_two:
        k = G.rank
        return (g >> (k - h)).bit_count()
    return sum(1 for c in G.coords(g)[:h] if c)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as its full element set plus a canonical generating set."""

    group: FiniteAbelianGroup
    elements: frozenset[int]
    basis: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if 0 not in self.elements:
            raise ValueError("a subgroup must contain the identity")
        G = self.group
        for a in self.elements:
            if G.add(a, a) not in self.elements or any(
                G.add(a, b) not in self.elements for b in self.elements
            ):
                raise ValueError("element set is not closed under addition")
        if not self.basis:
            object.__setattr__(self, "basis", _canonical_basis(G, self.elements))

    @classmethod
    def from_generators(cls, G: FiniteAbelianGroup, gens: tuple[int, ...] | list[int]) -> "Subgroup":
        return cls(G, frozenset(_closure(G, gens)))

    @classmethod
    def trivial(cls, G: FiniteAbelianGroup) -> "Subgroup":
        return cls(G, frozenset({0}))

    @classmethod
    def full(cls, G: FiniteAbelianGroup) -> "Subgroup":
        return cls(G, frozenset(G.elements()))

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: int) -> bool:
        return g in self.elements

    def sorted_elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def cosets(self) -> list[tuple[int, ...]]:
        """All cosets, each sorted, ordered by their smallest member."""
        G, seen, out = self.group, set(), []
        for g in G.elements():
            if g in seen:
                continue
            coset = tuple(sorted(G.add(g, h) for h in self.elements))
            seen.update(coset)
            out.append(coset)
        return out

    def annihilator(self) -> "Subgroup":
        """Characters vanishing on every member (a subgroup of the dual)."""
        G = self.group
        chars = frozenset(
            chi
            for chi in G.elements()
            if all(G.chi_value(chi, h) == 0 for h in self.elements)
        )
        return Subgroup(G, chars)


def _closure(G: FiniteAbelianGroup, gens) -> set[int]:
    out = {0}
    frontier = {0}
    while frontier:
        nxt = set()
        for a in frontier:
            for g in gens:
                s = G.add(a, g)
                if s not in out:
                    out.add(s)
                    nxt.add(s)
        frontier = nxt
    return out


def _canonical_basis(G: FiniteAbelianGroup, elements: frozenset[int]) -> tuple[int, ...]:
    if G.is_exponent_two:
        rows, _ = rref_gf2(sorted(elements, reverse=True))
        return rows
    gens: list[int] = []
    span: set[int] = {0}
    for g in sorted(elements):
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
    return tuple(gens)


def restricted_order(G: FiniteAbelianGroup, H: Subgroup, g: int) -> int:
    """Order of g seen through the characters in H only (order of g in G / H-perp)."""
    return lcm(*(G.chi_value(chi, g).denominator for chi in H.elements))


# ---------------------------------------------------------------------------
# GF(2) linear algebra on row bitmasks (most significant bit = column 0).


def rref_gf2(rows) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row-reduced echelon form; returns (nonzero rows, pivot masks)."""
    reduced: list[int] = []
    for row in rows:
        for r in reduced:
            row = min(row, row ^ r)
        if row:
            reduced.append(row)
            reduced.sort(reverse=True)
    rows_out: list[int] = []
    for i, row in enumerate(reduced):
        for r in reduced[i + 1 :]:
            if row & _leading_bit(r):
                row ^= r
        rows_out.append(row)
    rows_out.sort(reverse=True)
    return tuple(rows_out), tuple(_leading_bit(r) for r in rows_out)


def _leading_bit(x: int) -> int:
    return 1 << (x.bit_length() - 1)


def span_gf2(rows) -> list[int]:
    """All XOR combinations of the given rows, sorted."""
    out = [0]
    for r in rows:
        out += [x ^ r for x in out]
    return sorted(set(out))


def apply_matrix(k: int, rows: tuple[int, ...], x: int) -> int:
    """Image of the bitvector x under the matrix whose i-th row is the image of basis vector i."""
    out = 0
    for i in range(k):
        if (x >> (k - 1 - i)) & 1:
            out ^= rows[i]
    return out


def mat_mul(k: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Composition: (a o b), so apply(mat_mul(a, b), x) = apply(a, apply(b, x))."""
    return tuple(apply_matrix(k, a, row) for row in b)


def mat_transpose(k: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(
        sum(((rows[j] >> (k - 1 - i)) & 1) << (k - 1 - j) for j in range(k))
        for i in range(k)
    )


def mat_inv(k: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    """Inverse over GF(2); raises ValueError on a singular matrix."""
    aug = [(rows[i], 1 << (k - 1 - i)) for i in range(k)]
    out: list[tuple[int, int]] = []
    for col in range(k):
        bit = 1 << (k - 1 - col)
        pivot = next((i for i, (r, _) in enumerate(aug) if r & bit), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        prow = aug.pop(pivot)
        aug = [(r ^ prow[0], t ^ prow[1]) if r & bit else (r, t) for r, t in aug]
        out = [(r ^ prow[0], t ^ prow[1]) if r & bit else (r, t) for r, t in out]
        out.append(prow)
    return tuple(t for _, t in out)


def contragredient(k: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    """The induced matrix on the dual side: transpose of the inverse."""
    return mat_transpose(k, mat_inv(k, rows))


# ---------------------------------------------------------------------------
# Subgroup enumeration for (Z/2)^k via row-reduced echelon bases.


def subgroups(G: FiniteAbelianGroup) -> list[Subgroup]:
    """All subgroups of (Z/2)^k with canonical bases, sorted by (order, elements)."""
    if not G.is_exponent_two:
        raise GroupNotExponentTwo("subgroup enumeration is implemented for (Z/2)^k only")
    k = G.rank
    if k > MAX_RANK:
        raise ValueError(f"subgroup enumeration supports rank <= {MAX_RANK}, got {k}")
    found = [Subgroup(G, frozenset({0}), basis=())]
    for r in range(1, k + 1):
        for pivots in combinations(range(k), r):
            free_cells = [
                (i, c)
                for i in range(r)
                for c in range(pivots[i] + 1, k)
                if c not in pivots
            ]
            for bits in product((0, 1), repeat=len(free_cells)):
                rows = [1 << (k - 1 - pivots[i]) for i in range(r)]
                for (i, c), b in zip(free_cells, bits):
                    if b:
                        rows[i] |= 1 << (k - 1 - c)
                found.append(Subgroup(G, frozenset(span_gf2(rows)), basis=tuple(rows)))
    found.sort(key=lambda H: (H.order, H.sorted_elements()))
    return found


@lru_cache(maxsize=None)
def _subgroups_cached(k: int) -> tuple[Subgroup, ...]:
    return tuple(subgroups(group_z2(k)))


def subgroups_z2(k: int) -> tuple[Subgroup, ...]:
    """Cached subgroup list of (Z/2)^k."""
    return _subgroups_cached(k)


# ---------------------------------------------------------------------------
# Isomorphism search on degree vectors.


def find_isomorphisms(k: int, l_a, l_b):
    """Yield every M in GL(k,F2), as basis-image rows, with l_a(M(chi)) = l_b(chi) for all chi."""
    n = 1 << k
    if len(l_a) != n or len(l_b) != n:
        raise ValueError(f"degree vectors must have length {n}")
    if sorted(l_a) != sorted(l_b) or l_a[0] != l_b[0]:
        return
    basis = [1 << (k - 1 - i) for i in range(k)]

    def backtrack(i: int, rows: list[int], pairs: list[tuple[int, int]]):
        if i == k:
            yield tuple(rows)
            return
        src = basis[i]
        images = {im for _, im in pairs}
        candidates = [src] + [m for m in range(1, n) if m != src]
        for img in candidates:
            if img in images:
                continue
            new_pairs = [(c ^ src, im ^ img) for c, im in pairs]
            if all(l_a[im] == l_b[c] for c, im in new_pairs):
                yield from backtrack(i + 1, rows + [img], pairs + new_pairs)

    yield from backtrack(0, [], [(0, 0)])


def find_isomorphism(k: int, l_a, l_b) -> tuple[int, ...] | None:
    """First matrix relating the two degree vectors, or None; the result is re-verified."""
    for rows in find_isomorphisms(k, l_a, l_b):
        n = 1 << k
        assert all(l_a[apply_matrix(k, rows, chi)] == l_b[chi] for chi in range(n))
        assert len(span_gf2(rows)) == n
        return rows
    return None


def kernel_of_character(G: FiniteAbelianGroup, chi: int) -> Subgroup:
    """{h in G : chi(h) = 0}."""
    return Subgroup(G, frozenset(h for h in G.elements() if G.chi_value(chi, h) == 0))


def kernel_of_element(G: FiniteAbelianGroup, g: int) -> Subgroup:
    """{chi in the dual : chi(g) = 0}."""
    return Subgroup(G, frozenset(chi for chi in G.elements() if G.chi_value(chi, g) == 0))
