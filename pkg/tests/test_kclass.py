"""Downstream wedges, distinguished matchings, classes, and weights."""

import pytest

from discdimer import fixtures as fx
from discdimer.kclass_weights import (downstream_wedge, kclass_of_matching,
                                      muller_speyer_matching,
                                      projective_matching_oracle,
                                      upstream_matching, weight_table, weights)
from discdimer.lattice_maps import eta, eta_inverse_basis, lattice_point_of_matching
from discdimer.matchings import boundary_value, enumerate_matchings
from discdimer.model import WHITE, standardise
from discdimer.strands import source_labels, target_labels

CONSISTENT_FIXTURES = [n for n in sorted(fx.FIXTURE_BUILDERS) if n != "inconsistent"]


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_wedges_partition_each_face(name):
    # around any face, each vertex lies in the wedge of exactly one arrow
    model = fx.FIXTURE_BUILDERS[name]()
    wedges = {a.id: downstream_wedge(model, a.id).members for a in model.arrows}
    for face in model.faces:
        for v in model.vertices:
            hits = [a for a in face.boundary_cycle if v.id in wedges[a]]
            assert len(hits) == 1


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_three_way_matching_equality(name):
    model = fx.FIXTURE_BUILDERS[name]()
    inverse = eta_inverse_basis(model)
    for v in model.vertices:
        wedge_mu = muller_speyer_matching(model, v.id).arrow_set
        inv_mu = frozenset(a for a, x in inverse[v.id].values if x == 1)
        oracle_mu = projective_matching_oracle(model, v.id).arrow_set
        assert wedge_mu == inv_mu == oracle_mu


def test_oracle_independent_of_reference(gr37):
    pool = enumerate_matchings(gr37)
    for v in list(gr37.vertices)[:4]:
        results = {projective_matching_oracle(gr37, v.id, mu0).arrow_set
                   for mu0 in pool[:5]}
        assert len(results) == 1


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_wedge_matching_boundaries_are_labels(name):
    model = fx.FIXTURE_BUILDERS[name]()
    src, tgt = source_labels(model), target_labels(model)
    for v in model.vertices:
        down = muller_speyer_matching(model, v.id)
        assert boundary_value(model, down) == src[v.id]
        up = upstream_matching(model, v.id)
        assert boundary_value(model, up) == tgt[v.id]


def test_gr37_internal_upstream_values(gr37):
    internal = [v.id for v in gr37.vertices if not v.is_boundary]
    values = {boundary_value(gr37, upstream_matching(gr37, j)) for j in internal}
    assert values == {frozenset({1, 3, 5}), frozenset({1, 3, 7}), frozenset({1, 5, 7})}


@pytest.mark.parametrize("name", ["gr37", "uniform-2-4"])
def test_kclass_equals_eta(name):
    model = fx.FIXTURE_BUILDERS[name]()
    for mu in enumerate_matchings(model):
        lhs = kclass_of_matching(model, mu).as_dict()
        rhs = eta(model, lattice_point_of_matching(model, mu)).as_dict()
        assert lhs == rhs


@pytest.mark.parametrize("name", ["gr37", "uniform-2-4", "uniform-2-5"])
def test_weight_identity(name):
    # [N_mu] = wtD + sum over boundary labels in the boundary value of
    # p_head - wt(mu), on the white-standardised model
    model = standardise(fx.FIXTURE_BUILDERS[name](), WHITE)
    for mu in enumerate_matchings(model):
        wt, wtd = weights(model, mu, WHITE)
        expect = {v: -e for v, e in wt.as_dict().items()}
        for v, e in wtd.as_dict().items():
            expect[v] = expect.get(v, 0) + e
        for i in boundary_value(model, mu):
            h = model.boundary_arrow_with_label(i).head
            expect[h] = expect.get(h, 0) + 1
        cls = kclass_of_matching(model, mu).as_dict()
        assert ({v: e for v, e in expect.items() if e}
                == {v: e for v, e in cls.items() if e})


@pytest.mark.parametrize("name", ["gr37", "uniform-2-4"])
def test_weight_double_formula(name):
    # wt(mu) also equals the sum of truncated-cycle weights of the matched
    # internal arrows
    model = standardise(fx.FIXTURE_BUILDERS[name](), WHITE)
    table = weight_table(model, WHITE)
    for mu in enumerate_matchings(model):
        wt, _ = weights(model, mu, WHITE)
        alt = {}
        for a in model.internal_arrows:
            if a.id in mu.arrow_set:
                for v, e in table[a.id].as_dict().items():
                    alt[v] = alt.get(v, 0) + e
        assert ({v: e for v, e in wt.as_dict().items() if e}
                == {v: e for v, e in alt.items() if e})


def test_weights_require_standardised(gr37):
    mu = enumerate_matchings(gr37)[0]
    with pytest.raises(ValueError):
        weights(gr37, mu, WHITE)
