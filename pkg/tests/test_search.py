from __future__ import annotations

import random

import pytest

from multinets.analysis import compare_prediction
from multinets.cyclo import parse_elem
from multinets.projgeo import PlaneP3
from multinets.qn import unit_points_on
from multinets.search import (
    EXAMPLE_46_POINTS,
    GoldenMismatch,
    SearchConfig,
    example_46_plane,
    reproduce_example_46,
    run_search,
    transform_plane,
)

from conftest import qn_for

# exhaustive unit-triple maxima with all filters on; frozen after the first verified run
FROZEN_MAXIMA = {4: 4, 5: 6, 6: 6}


def test_golden_plane_found():
    q = qn_for(8)
    run = run_search(SearchConfig(n=8, top=10), q)
    assert run.exhausted
    assert all(r.double_point_count == 8 for r in run.results)
    assert example_46_plane(q) in [r.plane for r in run.results]


@pytest.mark.parametrize("n", sorted(FROZEN_MAXIMA))
def test_frozen_maximum(n):
    run = run_search(SearchConfig(n=n, top=5), qn_for(n))
    assert run.exhausted and run.max_count == FROZEN_MAXIMA[n]


def test_small_n_note():
    run = run_search(SearchConfig(n=2), qn_for(2))
    assert run.results == []
    assert any("validator disabled" in note for note in run.notes)


def test_ordering_and_uniqueness():
    run = run_search(SearchConfig(n=5, top=40), qn_for(5))
    keys = [(-r.double_point_count, r.plane.sort_key()) for r in run.results]
    assert keys == sorted(keys)
    assert len({r.plane for r in run.results}) == len(run.results)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_result_invariants(n):
    q = qn_for(n)
    run = run_search(SearchConfig(n=n, top=15), q)
    for r in run.results:
        rep = r.report
        assert rep.verification.ok and rep.verdict == "light"
        assert rep.fixed_components == 0 and rep.count_points(n) == 0
        assert not (rep.count_lines(n) and rep.count_lines(2))
        assert rep.count_points(2) == r.double_point_count == len(unit_points_on(r.plane, q))
        assert compare_prediction(r.plane, q) == {}


def test_relaxed_filters_allow_fixed_components():
    q = qn_for(4)
    run = run_search(SearchConfig(n=4, top=30, forbid_fixed=False, forbid_mult_n_points=False, require_light=False), q)
    assert run.results
    assert all(r.report.fixed_components <= 2 for r in run.results)


def test_symmetry_soundness():
    q = qn_for(5)
    rng = random.Random(3)
    run = run_search(SearchConfig(n=5, top=3), q)
    for r in run.results:
        for _ in range(10):
            perm = rng.sample(range(4), 4)
            exps = [rng.randrange(5) for _ in range(4)]
            h2 = transform_plane(r.plane, perm, exps, q)
            assert h2 not in q
            assert len(unit_points_on(h2, q)) == r.double_point_count


def test_random_rational_deterministic():
    q = qn_for(4)
    cfg = SearchConfig(n=4, strategy="random-rational", budget=300, top=5, seed=9, coefficient_range=4)
    a, b = run_search(cfg, q), run_search(cfg, q)
    assert [r.plane for r in a.results] == [r.plane for r in b.results]
    assert a.examined == 300 and not a.exhausted and a.notes


def test_file_list():
    q = qn_for(8)
    f = q.field
    planes = [example_46_plane(q), PlaneP3([1, 2, 3, 5], field=f), PlaneP3([3, -2, -1, 0], field=f)]
    run = run_search(SearchConfig(n=8, strategy="file-list", planes=planes, top=5), q)
    assert [r.plane for r in run.results] == [planes[0]]
    assert run.exhausted


def test_budget_reported():
    run = run_search(SearchConfig(n=4, budget=50, top=2), qn_for(4))
    assert run.examined == 50 and not run.exhausted
    assert any("budget" in note for note in run.notes)


@pytest.mark.parametrize(
    "kwargs", [dict(strategy="annealing"), dict(budget=0), dict(top=0)]
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(n=4, **kwargs)


def test_config_n_mismatch():
    with pytest.raises(ValueError):
        run_search(SearchConfig(n=4), qn_for(5))


class TestExample46:
    def test_reproduces(self):
        q = qn_for(8)
        r = reproduce_example_46(q)
        assert r.double_point_count == 8
        assert r.report.point_mult_histogram == {1: 224, 2: 8}

    def test_plane_coefficients(self):
        q = qn_for(8)
        f = q.field
        h = example_46_plane(q)
        assert list(h) == [f.one(), -(f.zeta() + 1), -f.zeta(3), f.zeta(3) + f.zeta()]
        assert unit_points_on(h, q) == sorted(EXAMPLE_46_POINTS)

    def test_incident_planes(self):
        q = qn_for(8)
        f = q.field
        from multinets.projgeo import ProjPoint, incident

        P = ProjPoint([f.zeta(2), f.zeta(1), f.one(), f.one()])
        labels = {p.label() for p in q.planes if incident(p.plane, P)}
        assert {"x0 - z*x1", "x2 - x3"} <= labels and len(labels) == 6

    def test_wrong_arrangement(self):
        with pytest.raises(GoldenMismatch):
            reproduce_example_46(qn_for(4))

    def test_parse_is_exact(self):
        q = qn_for(8)
        assert parse_elem("z^3+z", q.field) == q.field.zeta(3) + q.field.zeta(1)
