"""Weighted-projective equation templates for exponent-2 covers of the plane.

Each cover embeds in a weighted projective space with one variable of weight
l(chi) per nonzero character; the defining relations are monomial:
y_r * y_s = y_{r+s} * product of branch symbols f_g over the elements where
both characters pair oddly.  Branch symbols are opaque generic forms carrying
only their degree.  Variables whose defining relation has no branch symbol
can be eliminated, which reproduces the familiar small ambients.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .building import BuildingDataNumeric
from .errors import GroupNotExponentTwo, UnknownFormat


@dataclass(frozen=True)
class MonomialEquation:
    """y_{lhs[0]} * y_{lhs[1]} = (product of y over rhs_y) * (product of f over rhs_f)."""

    lhs: tuple[int, int]
    rhs_y: tuple[int, ...]
    rhs_f: tuple[int, ...]


@dataclass(frozen=True)
class WeightedModel:
    """A set of monomial relations among weighted variables and branch symbols."""

    k: int
    base_dim: int
    l: tuple[int, ...]
    d: tuple[int, ...]
    y_chars: tuple[int, ...]
    equations: tuple[MonomialEquation, ...]

    def y_weight(self, chi: int) -> int:
        return self.l[chi]

    def f_degree(self, g: int) -> int:
        return self.d[g]


def _odd(chi: int, g: int) -> bool:
    return (chi & g).bit_count() & 1 == 1


def _pair_f(bd_d: tuple[int, ...], r: int, s: int) -> tuple[int, ...]:
    return tuple(
        g for g in range(1, len(bd_d)) if bd_d[g] and _odd(r, g) and _odd(s, g)
    )


def build_model(bd: BuildingDataNumeric) -> WeightedModel:
    """One relation per unordered pair of nonzero characters, r = s included."""
    if not bd.group.is_exponent_two:
        raise GroupNotExponentTwo("equation templates need (Z/2)^k")
    if bd.base_dim != 2:
        raise ValueError("equation templates are for covers of the plane")
    size = bd.group.size
    equations = []
    for r in range(1, size):
        for s in range(r, size):
            t = r ^ s
            equations.append(
                MonomialEquation(
                    lhs=(r, s),
                    rhs_y=(t,) if t else (),
                    rhs_f=_pair_f(bd.d, r, s),
                )
            )
    return WeightedModel(
        k=bd.k,
        base_dim=bd.base_dim,
        l=bd.l,
        d=bd.d,
        y_chars=tuple(range(1, size)),
        equations=tuple(equations),
    )


def check_homogeneous(model: WeightedModel) -> bool:
    """Weight balance of every relation: l(r) + l(s) = sum l(rhs_y) + sum d(rhs_f)."""
    for eq in model.equations:
        lhs = model.l[eq.lhs[0]] + model.l[eq.lhs[1]]
        rhs = sum(model.l[chi] for chi in eq.rhs_y) + sum(model.d[g] for g in eq.rhs_f)
        if lhs != rhs:
            return False
    return True


def eliminate(
    model: WeightedModel, variable_order: tuple[int, ...] | None = None
) -> WeightedModel:
    """Remove every variable defined by a symbol-free relation y_r y_s = y_t.

    Variables are retired in the given order (lexicographic by default); a
    retired variable stays usable on the left of later definitions because it
    is itself a monomial in the survivors.  A definition is skipped only when
    expanding it would mention the variable being defined, which keeps the
    definitions acyclic.  The surviving relations are re-emitted with retired
    variables expanded back into products, and tautologies are dropped.  The
    ambient weight multiset does not depend on the order.
    """
    order = variable_order if variable_order is not None else model.y_chars
    alive = set(model.y_chars)
    defs: dict[int, tuple[int, int]] = {}

    def expand(chi: int) -> tuple[int, ...]:
        if chi not in defs:
            return (chi,)
        r, s = defs[chi]
        return expand(r) + expand(s)

    candidates = [
        eq
        for eq in sorted(model.equations, key=lambda e: e.lhs)
        if not eq.rhs_f and len(eq.rhs_y) == 1
    ]
    changed = True
    while changed:
        changed = False
        for t in order:
            if t not in alive:
                continue
            for eq in candidates:
                if eq.rhs_y != (t,):
                    continue
                r, s = eq.lhs
                if t in expand(r) + expand(s):
                    continue
                alive.remove(t)
                defs[t] = (r, s)
                changed = True
                break

    survivors = tuple(sorted(alive))
    equations = []
    for eq in model.equations:
        r, s = eq.lhs
        if r not in alive or s not in alive:
            continue
        rhs_y = tuple(sorted(x for chi in eq.rhs_y for x in expand(chi)))
        if not eq.rhs_f and sorted(rhs_y) == sorted((r, s)):
            continue
        equations.append(MonomialEquation(lhs=(r, s), rhs_y=rhs_y, rhs_f=eq.rhs_f))
    return WeightedModel(
        k=model.k,
        base_dim=model.base_dim,
        l=model.l,
        d=model.d,
        y_chars=survivors,
        equations=tuple(equations),
    )


def ambient_weights(model: WeightedModel) -> tuple[int, ...]:
    """Sorted weights of the ambient variables: n+1 ones plus one l per y."""
    coords = [1] * (model.base_dim + 1)
    coords += [model.l[chi] for chi in model.y_chars]
    return tuple(sorted(coords))


def _bits(model: WeightedModel, value: int) -> str:
    return f"{value:0{model.k}b}"


def _product_text(factors: list[str]) -> str:
    if not factors:
        return "1"
    counted = Counter(factors)
    parts = []
    for name in sorted(counted):
        n = counted[name]
        parts.append(name if n == 1 else f"{name}^{n}")
    return "*".join(parts)


def _equation_text(model: WeightedModel, eq: MonomialEquation) -> str:
    lhs = _product_text([f"y{_bits(model, chi)}" for chi in eq.lhs])
    rhs = _product_text(
        [f"y{_bits(model, chi)}" for chi in eq.rhs_y]
        + [f"f{_bits(model, g)}" for g in eq.rhs_f]
    )
    return f"{lhs} = {rhs}"


def _product_latex(factors: list[str]) -> str:
    if not factors:
        return "1"
    counted = Counter(factors)
    parts = []
    for name in sorted(counted):
        n = counted[name]
        parts.append(name if n == 1 else f"{name}^{{{n}}}")
    return " ".join(parts)


def _equation_latex(model: WeightedModel, eq: MonomialEquation) -> str:
    lhs = _product_latex([f"y_{{{_bits(model, chi)}}}" for chi in eq.lhs])
    rhs = _product_latex(
        [f"y_{{{_bits(model, chi)}}}" for chi in eq.rhs_y]
        + [f"f_{{{_bits(model, g)}}}" for g in eq.rhs_f]
    )
    return f"{lhs} &= {rhs}"


def render(model: WeightedModel, format: str = "text") -> str:
    """Deterministic document in the requested format: text, latex, or json."""
    if format == "text":
        return "\n".join(_equation_text(model, eq) for eq in model.equations)
    if format == "latex":
        if not model.equations:
            return ""
        body = " \\\\\n".join(_equation_latex(model, eq) for eq in model.equations)
        return "\\begin{align*}\n" + body + "\n\\end{align*}"
    if format == "json":
        from .serialize import to_json

        return to_json(model)
    raise UnknownFormat(f"unknown render format {format!r}")
