from __future__ import annotations

import random
from itertools import permutations

import pytest

import oracles
from multinets.analysis import (
    classify_induced,
    classify_multinet,
    compare_prediction,
    double_point_census,
    fixed_component_violations,
    half_block_pencil_check,
    nondegeneracy_check,
    predicted_vs_actual,
    raw_point_profile,
    uniqueness_check,
)
from multinets.cyclo import parse_elem
from multinets.multinet import catalog
from multinets.projgeo import PlaneP3, ProjPoint
from multinets.section import restrict

from conftest import qn_for

GOLDEN = ("1", "-(z+1)", "-z^3", "z^3+z")


def plane(q, *coeffs):
    return PlaneP3([parse_elem(str(c), q.field) for c in coeffs])


def classify(q, *coeffs):
    return classify_induced(restrict(q, plane(q, *coeffs)))


class TestClassify:
    def test_one_mult_n_line(self):
        rep = classify(qn_for(5), 1, -2, 0, 0)
        assert rep.verdict == "heavy" and rep.count_lines(5) == 1 and rep.profile_ok

    @pytest.mark.parametrize("n,expected", [(5, 2), (6, 3), (4, 3), (7, 2)])
    def test_double_lines_parity(self, n, expected):
        rep = classify(qn_for(n), 1, -1, -1, 1)
        assert rep.verdict == "heavy" and rep.count_lines(2) == expected
        assert rep.count_lines(n) == 0

    @pytest.mark.parametrize("n", [4, 5])
    def test_two_coordinate_points(self, n):
        # the plane contains the base x0 = x1 = 0, hence is heavy; see the decisions ledger
        rep = classify(qn_for(n), 3, 7, 0, 0)
        assert rep.verdict == "heavy"
        assert rep.count_lines(n) == 1 and rep.count_points(n) == 2

    def test_one_coordinate_point(self):
        rep = classify(qn_for(5), 3, 7, 11, 0)
        assert rep.verdict == "light" and rep.point_mult_histogram == {1: 75, 5: 1}

    def test_catalog_without_n(self):
        rep = classify_multinet(catalog("hasse"))
        assert rep.verdict == "net" and not rep.validator_enabled

    def test_validator_disabled_small_n(self):
        rep = classify(qn_for(3), 3, 7, 11, -21)
        assert not rep.validator_enabled and rep.notes

    def test_validator_flags_bad_profile(self):
        # a light multinet with a mult-n point and double points but no fixed component
        from multinets.analysis import _profile_violations
        from collections import Counter

        v = _profile_violations(5, Counter({1: 30}), Counter({1: 50, 2: 2, 5: 1}), 0, "light")
        assert v


class TestPrediction:
    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_examples(self, n):
        q = qn_for(n)
        for c in [(1, 0, 0, 0), (1, -2, 0, 0), (1, -1, -1, 1), (3, -2, -1, 0), (1, "-(z+1)", "z", 0), (1, 2, 3, 5)]:
            assert compare_prediction(plane(q, *c), q) == {}

    def test_golden(self):
        q = qn_for(8)
        assert predicted_vs_actual(plane(q, *GOLDEN), q)

    def test_random_n4(self):
        q = qn_for(4)
        rng = random.Random(4)
        for _ in range(40):
            h = PlaneP3([rng.randint(-6, 6) for _ in range(3)] + [rng.randint(1, 6)], field=q.field)
            if h not in q:
                assert predicted_vs_actual(h, q)


class TestCensus:
    def test_golden(self):
        q = qn_for(8)
        rep = double_point_census(plane(q, *GOLDEN), q)
        f = q.field
        expected = {
            ProjPoint([f.zeta(a), f.zeta(b), f.zeta(c), f.one()])
            for a, b, c in [(0, 0, 0), (2, 1, 0), (2, 2, 6), (4, 3, 6), (5, 2, 3), (5, 3, 5), (7, 0, 1), (7, 1, 3)]
        }
        assert set(rep.points) == expected and rep.agrees is True
        assert ProjPoint([f.zeta(2), f.zeta(1), f.one(), f.one()]) in rep.points

    def test_generic_empty(self):
        q = qn_for(5)
        rep = double_point_census(plane(q, 1, 2, 3, 5), q)
        assert rep.points == []
        # a net is not light, so the locus cross-check does not apply
        assert not rep.precondition_ok and rep.agrees is None

    def test_single_unit_point(self):
        q = qn_for(5)
        rng = random.Random(13)
        for _ in range(5):
            a, b, c = (rng.randint(2, 40) for _ in range(3))
            rep = double_point_census(plane(q, a, b, c, -(a + b + c)), q)
            assert rep.points == [ProjPoint([1, 1, 1, 1], field=q.field)] and rep.agrees is True

    def test_precondition(self):
        q = qn_for(5)
        rep = double_point_census(plane(q, 3, -2, -1, 0), q)
        assert not rep.precondition_ok and rep.agrees is None


class TestPencils:
    def test_generic_distinct(self):
        q = qn_for(4)
        rep = half_block_pencil_check(restrict(q, plane(q, 1, 2, 3, 5)))
        assert rep.ok and rep.precondition_ok and rep.distinct

    def test_shared_base_point(self):
        q = qn_for(4)
        rep = half_block_pencil_check(restrict(q, plane(q, 3, 7, 11, 0)))
        assert rep.ok and not rep.distinct
        e3 = ProjPoint([0, 0, 1], field=q.field)
        assert sorted(pair for pair, P in rep.base_points.items() if P == e3) == [(0, 1), (0, 2), (1, 2)]

    def test_heavy_precondition(self):
        q = qn_for(4)
        rep = half_block_pencil_check(restrict(q, plane(q, 1, 0, 0, 0)))
        assert not rep.precondition_ok and not rep.ok


def numeric_injective(n):
    vals = []
    for a, b in permutations(range(1, n), 2):
        vals.append((1 - oracles.root(n, a)) / (1 - oracles.root(n, b)))
    return all(not oracles.is_zero(x - y) for i, x in enumerate(vals) for y in vals[i + 1 :])


class TestUniqueness:
    def test_vacuous(self):
        assert uniqueness_check(1) and uniqueness_check(2)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_against_numeric_oracle(self, n):
        assert uniqueness_check(n) is numeric_injective(n) is True


class TestNondegeneracy:
    def test_golden(self):
        q = qn_for(8)
        rep = nondegeneracy_check(plane(q, *GOLDEN), q)
        assert rep.ok and rep.checked_points == 8

    def test_vacuous(self):
        q = qn_for(5)
        rep = nondegeneracy_check(plane(q, 1, 2, 3, 5), q)
        assert rep.ok and rep.checked_points == 0

    def test_zero_coefficient(self):
        q = qn_for(5)
        rep = nondegeneracy_check(plane(q, 0, 2, 3, 5), q)
        assert not rep.precondition_ok and not rep


class TestFixedComponentStructure:
    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_examples(self, n):
        q = qn_for(n)
        for c in [(3, -2, -1, 0), (1, "-(z+1)", "z", 0), (1, 2, 3, 5), (3, 7, 11, 0), (7, 3, 11, -21)]:
            assert fixed_component_violations(restrict(q, plane(q, *c))) == []

    def test_raw_profile_on_fixed(self):
        q = qn_for(5)
        im = restrict(q, plane(q, 3, -2, -1, 0))
        prof = raw_point_profile(im)
        (rows,) = prof.on_fixed
        assert sorted(prof.multiplicity(r) for r in rows) == [2] * 5 + [5]
