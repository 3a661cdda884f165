"""Property-based tests: identities that must hold on every admissible input."""

from __future__ import annotations

from hypothesis import given, settings, strategies as st

from kdouble.building import (
    BuildingDataNumeric,
    check_sum_identities,
    d_from_l,
    l_from_d,
    subgroup_sum_identity,
    validate,
)
from kdouble.equations import ambient_weights, build_model, check_homogeneous, eliminate
from kdouble.groups import FiniteAbelianGroup, Subgroup, span_gf2, subgroups_z2
from kdouble.serialize import from_json, to_json


@st.composite
def exponent_two_data(draw, k_max: int = 4):
    """Branch-degree vectors with the parity defect repaired, hence integral l."""
    k = draw(st.integers(1, k_max))
    n = 1 << k
    d = [0] + [draw(st.integers(0, 6)) for _ in range(n - 1)]
    defect = 0
    for g in range(1, n):
        if d[g] & 1:
            defect ^= g
    if defect:
        d[defect] += 1
    group = FiniteAbelianGroup((2,) * k)
    l = l_from_d(group, tuple(d)).as_integers()
    support = [g for g in range(1, n) if d[g]]
    connected = len(span_gf2(support)) == n
    return BuildingDataNumeric(group, l, tuple(d), connected=connected)


@st.composite
def general_group(draw, size_cap: int = 60):
    orders = [draw(st.sampled_from((2, 3, 4, 5)))]
    while draw(st.booleans()):
        nxt = draw(st.sampled_from((2, 3, 4, 5)))
        if nxt * _prod(orders) > size_cap:
            break
        orders.append(nxt)
    return FiniteAbelianGroup(tuple(orders))


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


class TestTransformProperties:
    @settings(deadline=None, max_examples=120)
    @given(exponent_two_data())
    def test_round_trip_and_validity(self, bd):
        tr = d_from_l(bd.group, bd.l)
        assert tr.ok
        assert tr.as_integers() == bd.d
        back = l_from_d(bd.group, bd.d)
        assert back.ok
        assert back.as_integers() == bd.l
        assert all(v >= 0 for v in bd.l)
        assert validate(bd) == []

    @settings(deadline=None, max_examples=80)
    @given(exponent_two_data())
    def test_sum_identities(self, bd):
        report = check_sum_identities(bd)
        assert report.ok

    @settings(deadline=None, max_examples=60)
    @given(st.data())
    def test_subgroup_sum_identity_general(self, data):
        G = data.draw(general_group())
        d = [0] + [data.draw(st.integers(0, 4)) for _ in range(G.size - 1)]
        gens = data.draw(st.lists(st.integers(0, G.size - 1), max_size=2))
        H = Subgroup.from_generators(G, tuple(gens))
        lhs, rhs = subgroup_sum_identity(G, tuple(d), H)
        assert lhs == rhs


class TestQuotientProperties:
    @settings(deadline=None, max_examples=60)
    @given(st.data())
    def test_branch_conservation(self, data):
        from kdouble.quotients import quotient_data

        bd = data.draw(exponent_two_data(k_max=3))
        subgroups = subgroups_z2(bd.k)
        H = data.draw(st.sampled_from(subgroups))
        q = quotient_data(bd, H)
        outside = sum(
            bd.d[g] for g in range(bd.group.size) if g not in H.elements
        )
        assert sum(q.d) == outside
        assert validate(q.with_connected(False)) == []


class TestModelProperties:
    @settings(deadline=None, max_examples=60)
    @given(exponent_two_data(k_max=3))
    def test_homogeneity(self, bd):
        model = build_model(bd)
        assert check_homogeneous(model)
        assert check_homogeneous(eliminate(model))

    @settings(deadline=None, max_examples=40)
    @given(st.data())
    def test_ambient_is_order_free(self, data):
        bd = data.draw(exponent_two_data(k_max=3))
        model = build_model(bd)
        order = tuple(data.draw(st.permutations(model.y_chars)))
        assert ambient_weights(eliminate(model, order)) == ambient_weights(
            eliminate(model)
        )


class TestSerializationProperties:
    @settings(deadline=None, max_examples=60)
    @given(exponent_two_data())
    def test_data_round_trip(self, bd):
        assert from_json(to_json(bd)) == bd

    @settings(deadline=None, max_examples=30)
    @given(exponent_two_data(k_max=3))
    def test_model_round_trip(self, bd):
        model = eliminate(build_model(bd))
        assert from_json(to_json(model)) == model
