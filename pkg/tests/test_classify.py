"""Completeness and labeling of the eleven-family search, with independent oracles."""

from __future__ import annotations

import random
import re

import numpy as np
import pytest

import oracle_tools
from kdouble.building import d_from_l, data_z2, l_from_d, pg, validate
from kdouble.classify import (
    NOT_GENUS_THREE,
    TYPE_A,
    TYPE_B,
    TYPE_C,
    SearchConfig,
    detect_type,
    enumerate_families,
    family_data,
    family_table,
    lookup,
    modular_dimension,
)
from kdouble.errors import UnknownFamily
from kdouble.groups import apply_matrix, contragredient, find_isomorphism, mat_inv

EXPECTED_ORDER = ["A1", "A2", "B2", "A3", "D3", "C3", "E3", "A4", "D4", "C4", "D5"]

# label -> (modular dimension, K^2, canonical-map degree, base points, total branch degree)
EXPECTED_NUMBERS = {
    "A1": (36, 2, 2, 0, 8),
    "A2": (20, 4, 4, 0, 8),
    "A3": (12, 8, 8, 0, 8),
    "A4": (8, 16, 16, 0, 8),
    "B2": (19, 9, 9, 0, 9),
    "C3": (12, 8, 8, 0, 8),
    "C4": (8, 16, 16, 0, 8),
    "D3": (12, 2, 2, 0, 7),
    "D4": (8, 4, 4, 0, 7),
    "D5": (6, 8, 8, 0, 7),
    "E3": (12, 8, 4, 4, 8),
}


def table_by_label():
    return {fd.label: fd for fd in family_table()}


class TestDetectType:
    def test_shapes(self):
        assert detect_type(1, (0, 4)) == TYPE_A
        assert detect_type(2, (0, 3, 3, 3)) == TYPE_B
        assert detect_type(3, (0, 3, 3, 3, 2, 2, 2, 2)) == TYPE_B
        assert detect_type(3, (0, 3, 3, 2, 3, 2, 2, 1)) == TYPE_C
        assert detect_type(3, (0, 2, 2, 2, 2, 2, 2, 2)) == NOT_GENUS_THREE
        assert detect_type(2, (0, 4, 4, 2)) == NOT_GENUS_THREE

    def test_special_characters_can_sit_anywhere(self):
        assert detect_type(2, (0, 2, 2, 4)) == TYPE_A
        assert detect_type(3, (0, 2, 3, 3, 2, 3, 2, 2)) in (TYPE_B, TYPE_C)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            detect_type(2, (0, 4, 2))
        with pytest.raises(ValueError):
            detect_type(1, (1, 4))
        with pytest.raises(ValueError):
            detect_type(2, (0, 0, 4, 2))
        with pytest.raises(ValueError):
            detect_type(2, (0, 5, 2, 2))


class TestFamilyTable:
    def test_row_shape(self, family_labels):
        assert sorted(family_labels) == sorted(EXPECTED_ORDER)
        assert [fd.label for fd in enumerate_families()] == EXPECTED_ORDER
        by_label = table_by_label()
        assert set(by_label) == set(EXPECTED_ORDER)
        for label, (dim, k2, deg, bp, d_total) in EXPECTED_NUMBERS.items():
            fd = by_label[label]
            assert fd.modular_dimension == dim
            assert fd.K2 == k2
            assert fd.deg_canonical == deg
            assert fd.base_points == bp
            assert fd.d_total == d_total

    def test_types(self):
        by_label = table_by_label()
        for label in ("A1", "A2", "A3", "A4"):
            assert by_label[label].type == TYPE_A
        assert by_label["B2"].type == TYPE_B
        for label in ("C3", "C4", "D3", "D4", "D5", "E3"):
            assert by_label[label].type == TYPE_C

    def test_modular_dimension_formula(self, family_labels):
        for label in family_labels:
            fd = table_by_label()[label]
            assert modular_dimension(family_data(label)) == fd.modular_dimension
            assert fd.modular_dimension == sum(v * (v + 3) // 2 for v in fd.d) - 8

    def test_lookup(self):
        assert lookup("D5").k == 5
        with pytest.raises(UnknownFamily):
            lookup("Z9")
        bd = family_data("B2")
        assert (bd.l, bd.d, bd.connected) == ((0, 3, 3, 3), (0, 3, 3, 3), True)


class TestEnumeration:
    def test_full_search_matches_the_table(self):
        found = enumerate_families()
        assert sorted(found, key=lambda fd: fd.label) == sorted(
            family_table(), key=lambda fd: fd.label
        )
        assert max(fd.k for fd in found) == 5
        assert all(re.fullmatch(r"[A-E]\d", fd.label) for fd in found)

    def test_depth_cutoff(self):
        assert [fd.label for fd in enumerate_families(SearchConfig(k_max=2))] == [
            "A1",
            "A2",
            "B2",
        ]
        assert [fd.label for fd in enumerate_families(SearchConfig(k_max=1))] == ["A1"]

    def test_type_toggles(self):
        only_b = enumerate_families(SearchConfig(k_max=4, types=(TYPE_B,)))
        assert [fd.label for fd in only_b] == ["B2"]
        only_a = enumerate_families(SearchConfig(k_max=3, types=(TYPE_A,)))
        assert [fd.label for fd in only_a] == ["A1", "A2", "A3"]

    def test_parallel_runs_agree(self):
        assert enumerate_families(SearchConfig(jobs=4)) == enumerate_families(
            SearchConfig(jobs=1)
        )

    def test_config_validation(self):
        with pytest.raises(ValueError):
            enumerate_families(SearchConfig(k_max=0))
        with pytest.raises(ValueError):
            enumerate_families(SearchConfig(k_max=7))
        with pytest.raises(ValueError):
            enumerate_families(SearchConfig(types=("A", "Z")))
        assert enumerate_families(SearchConfig(k_max=2, jobs=0)) == enumerate_families(
            SearchConfig(k_max=2)
        )


class TestDegreeSpaceOracles:
    """Brute-force the whole candidate space of degree vectors, independently
    of the package's search, and compare survivors against the families."""

    def test_depth_two_complete(self):
        survivors = []
        for blocks in (
            oracle_tools.l_blocks_one_four(2),
            oracle_tools.l_blocks_three_threes(2),
        ):
            for block in blocks:
                ok, d = oracle_tools.survivors_from_l(2, block)
                for i in np.flatnonzero(ok):
                    survivors.append(
                        (tuple(int(v) for v in block[i]), tuple(int(v) for v in d[i]))
                    )
        assert sorted(survivors) == [
            ((0, 2, 2, 4), (0, 4, 4, 0)),
            ((0, 2, 4, 2), (0, 0, 4, 4)),
            ((0, 3, 3, 3), (0, 3, 3, 3)),
            ((0, 4, 2, 2), (0, 4, 0, 4)),
        ]
        a2 = family_data("A2")
        b2 = family_data("B2")
        for l, d in survivors:
            target = b2 if detect_type(2, l) == TYPE_B else a2
            assert find_isomorphism(2, target.l, l) is not None
            assert validate(data_z2(2, l, d)) == []

    def test_depth_two_sector_coverage(self):
        # entries are capped at 4 by the genus, so the two sectors cover
        # everything: of the 4^3 candidate tails exactly 4 have genus three
        tails = [
            (a, b, c)
            for a in (1, 2, 3, 4)
            for b in (1, 2, 3, 4)
            for c in (1, 2, 3, 4)
            if sum(1 if v == 3 else 3 if v == 4 else 0 for v in (a, b, c)) == 3
        ]
        expected = 3 * 4 + 1  # one spot for the 4 times 2^2 tails, plus (3,3,3)
        assert len(tails) == expected

    def test_depth_three_complete(self):
        one_four = []
        for block in oracle_tools.l_blocks_one_four(3):
            ok, _ = oracle_tools.survivors_from_l(3, block)
            one_four += [tuple(int(v) for v in block[i]) for i in np.flatnonzero(ok)]
        assert len(one_four) == 7
        a3 = family_data("A3")
        for l in one_four:
            assert find_isomorphism(3, a3.l, l) is not None

        by_sorted_d = {}
        three_threes = 0
        for block in oracle_tools.l_blocks_three_threes(3):
            ok, d = oracle_tools.survivors_from_l(3, block)
            three_threes += int(ok.sum())
            for i in np.flatnonzero(ok):
                key = tuple(sorted(int(v) for v in d[i]))
                by_sorted_d.setdefault(key, []).append(tuple(int(v) for v in block[i]))
        assert three_threes == 140
        counts = {key: len(v) for key, v in by_sorted_d.items()}
        assert counts == {
            tuple(sorted(family_data("C3").d)): 28,
            tuple(sorted(family_data("D3").d)): 28,
            tuple(sorted(family_data("E3").d)): 84,
        }
        rng = random.Random(2)
        for label in ("C3", "D3", "E3"):
            target = family_data(label)
            key = tuple(sorted(target.d))
            for l in rng.sample(by_sorted_d[key], 5):
                assert find_isomorphism(3, target.l, l) is not None

    def test_depth_four_single_four_sector(self):
        a4 = family_data("A4")
        survivors = []
        for block in oracle_tools.l_blocks_one_four(4):
            ok, d = oracle_tools.survivors_from_l(4, block)
            for i in np.flatnonzero(ok):
                survivors.append(
                    (tuple(int(v) for v in block[i]), tuple(int(v) for v in d[i]))
                )
        assert len(survivors) == 15
        for l, d in survivors:
            assert sorted(l) == sorted(a4.l)
            assert sorted(d) == sorted(a4.d)
        assert (a4.l, a4.d) in survivors

    def test_depth_four_three_threes_sector(self):
        c4 = family_data("C4")
        d4 = family_data("D4")
        counts = {tuple(sorted(c4.d)): 0, tuple(sorted(d4.d)): 0}
        total = 0
        found_canonical = set()
        for block in oracle_tools.l_blocks_three_threes(4):
            ok, d = oracle_tools.survivors_from_l(4, block)
            total += int(ok.sum())
            for i in np.flatnonzero(ok):
                key = tuple(sorted(int(v) for v in d[i]))
                counts[key] += 1
                row = tuple(int(v) for v in block[i])
                if row == c4.l:
                    found_canonical.add("C4")
                if row == d4.l:
                    found_canonical.add("D4")
        assert total == 2100
        assert counts[tuple(sorted(c4.d))] == 420
        assert counts[tuple(sorted(d4.d))] == 1680
        assert found_canonical == {"C4", "D4"}

    def test_depth_five_heavy_slice(self):
        d5 = family_data("D5")
        block = oracle_tools.l_candidates_heavy_k5()
        assert block.shape == (134_596, 32)
        ok, d = oracle_tools.survivors_from_l(5, block)
        rows = [tuple(int(v) for v in block[i]) for i in np.flatnonzero(ok)]
        assert len(rows) == 16
        assert d5.l in rows
        for i in np.flatnonzero(ok):
            assert tuple(sorted(int(v) for v in d[i])) == tuple(sorted(d5.d))
        rng = random.Random(6)
        for l in rng.sample(rows, 3):
            assert find_isomorphism(5, d5.l, l) is not None

    def test_depth_five_light_templates_die(self):
        # the three-threes shapes with the low character at the triple sum or
        # at a pairwise sum only close up through depth four
        base = [2] * 32
        base[0] = 0
        for chi in (16, 8, 4):
            base[chi] = 3
        for low in (28, 24, 20, 12):
            l = base.copy()
            l[low] = 1
            assert not d_from_l(5, tuple(l)).ok


class TestRelabellingInvariance:
    def test_families_survive_a_change_of_basis(self):
        rng = random.Random(13)
        for label in ("A2", "B2", "C3", "D3", "E3", "D4", "C4", "D5"):
            bd = family_data(label)
            k, n = bd.k, 1 << bd.k
            while True:
                m = tuple(rng.randrange(1, n) for _ in range(k))
                try:
                    mat_inv(k, m)
                    break
                except ValueError:
                    continue
            dual = contragredient(k, m)
            l2 = tuple(bd.l[apply_matrix(k, m, chi)] for chi in range(n))
            d2 = tuple(bd.d[apply_matrix(k, dual, g)] for g in range(n))
            assert l_from_d(k, d2).as_integers() == l2
            relabeled = data_z2(k, l2, d2)
            assert validate(relabeled) == []
            assert pg(relabeled) == 3
            assert find_isomorphism(k, bd.l, l2) is not None
