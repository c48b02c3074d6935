"""The matching lattice, the vertex-lattice isomorphism, and the
cluster-ensemble exactness checks."""

import pytest

from discdimer import fixtures as fx
from discdimer.lattice_maps import (beta_class, check_cluster_ensemble,
                                    coboundary, eta, eta_inverse_basis,
                                    eta_invariant_factors, is_eta_unimodular,
                                    lattice_basis, lattice_point_of_matching,
                                    make_lattice_point, require_in_lattice)
from discdimer.matchings import enumerate_matchings

CONSISTENT_FIXTURES = [n for n in sorted(fx.FIXTURE_BUILDERS) if n != "inconsistent"]


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_lattice_rank_is_vertex_count(name):
    model = fx.FIXTURE_BUILDERS[name]()
    assert len(lattice_basis(model)) == len(model.vertices)


def test_matchings_are_degree_one_points(gr37):
    for mu in enumerate_matchings(gr37):
        point = lattice_point_of_matching(gr37, mu)
        assert point.deg == 1
        assert all(x in (0, 1) for _, x in point.values)
        require_in_lattice(gr37, point)


def test_make_lattice_point_rejects_bad_face_sums(gr37):
    some_arrow = gr37.arrows[0].id
    with pytest.raises(ValueError):
        make_lattice_point(gr37, 1, {some_arrow: 1})


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_eta_unimodular_on_consistent(name):
    model = fx.FIXTURE_BUILDERS[name]()
    assert is_eta_unimodular(model)
    assert all(f == 1 for f in eta_invariant_factors(model))


def test_eta_not_unimodular_on_inconsistent(inconsistent):
    assert not is_eta_unimodular(inconsistent)
    factors = eta_invariant_factors(inconsistent)
    assert len(factors) < len(inconsistent.vertices)  # rank-deficient


def test_eta_of_matching_has_rank_one(gr37):
    for mu in enumerate_matchings(gr37):
        assert eta(gr37, lattice_point_of_matching(gr37, mu)).rank == 1


def test_coboundary_and_beta_agree(gr37):
    for v in gr37.vertices:
        point = coboundary(gr37, {v.id: 1})
        assert point.deg == 0
        assert eta(gr37, point).as_dict() == beta_class(gr37, v.id).as_dict()


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_ensemble_exact_on_consistent(name):
    report = check_cluster_ensemble(fx.FIXTURE_BUILDERS[name]())
    assert report.passed, report.witnesses


def test_ensemble_fails_on_inconsistent(inconsistent):
    report = check_cluster_ensemble(inconsistent)
    assert not report.passed
    assert not report.exact_at_first
    assert not report.exact_at_second


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_eta_inverse_gives_matchings(name):
    model = fx.FIXTURE_BUILDERS[name]()
    inverse = eta_inverse_basis(model)
    for j, point in inverse.items():
        assert point.deg == 1
        cls = eta(model, point)
        assert cls.as_dict().get(j, 0) == 1
        assert all(c == 0 for v, c in cls.coefficients if v != j)


def test_triangle_inverse_matchings(triangle):
    inverse = eta_inverse_basis(triangle)
    arrows = {j: sorted(a for a, x in point.values if x == 1)
              for j, point in inverse.items()}
    assert arrows == {0: [2], 1: [0], 2: [1]}


def test_eta_inverse_raises_on_inconsistent(inconsistent):
    with pytest.raises(ValueError):
        eta_inverse_basis(inconsistent)
