"""Perfect matchings, boundary values, positroids, flips, and heights."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_matchings, enumerate_dual_covers
from discdimer import fixtures as fx
from discdimer.matchings import (Matching, _gale_leq, boundary_value,
                                 enumerate_matchings, extreme_matchings, flip,
                                 height, is_matching, matchings_with_boundary,
                                 positroid, positroid_contains_necklace_test,
                                 support_subgraph)
from discdimer.model import type_of

CONSISTENT_FIXTURES = [n for n in sorted(fx.FIXTURE_BUILDERS) if n != "inconsistent"]

# Independently frozen counts (brute-force oracle over one arrow per face).
KNOWN_COUNTS = {"triangle": 3, "gr37": 46, "uniform-1-3": 3, "uniform-2-4": 7}

# The five 3-subsets of 1..7 outside the gr37 positroid.
GR37_NON_POSITROID = {frozenset(s) for s in
                      [(2, 3, 4), (4, 5, 6), (4, 5, 7), (4, 6, 7), (5, 6, 7)]}


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_enumeration_matches_brute_force(name):
    model = fx.FIXTURE_BUILDERS[name]()
    got = {mu.arrow_set for mu in enumerate_matchings(model)}
    assert got == brute_force_matchings(model)
    if name in KNOWN_COUNTS:
        assert len(got) == KNOWN_COUNTS[name]


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_boundary_size_is_k(name):
    model = fx.FIXTURE_BUILDERS[name]()
    k, _ = type_of(model)
    for mu in enumerate_matchings(model):
        assert len(boundary_value(model, mu)) == k


def test_is_matching_rejects_partial(gr37):
    mu = enumerate_matchings(gr37)[0]
    some = sorted(mu.arrow_set)[:-1]
    assert not is_matching(gr37, some)


def test_gr37_positroid(gr37):
    expected = {frozenset(s) for s in combinations(range(1, 8), 3)} - GR37_NON_POSITROID
    assert positroid(gr37) == expected
    assert len(expected) == 30


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_necklace_gale_test_matches_enumeration(name):
    model = fx.FIXTURE_BUILDERS[name]()
    k, n = type_of(model)
    pos = positroid(model)
    for J in combinations(range(1, n + 1), k):
        assert positroid_contains_necklace_test(model, J) == (frozenset(J) in pos)


def test_gale_leq_is_a_partial_order():
    n = 8
    subsets = [frozenset(s) for s in combinations(range(1, n + 1), 3)]
    for shift in (1, 4):
        for A in subsets[:20]:
            assert _gale_leq(A, A, shift, n)
        for A in subsets[:12]:
            for B in subsets[:12]:
                if _gale_leq(A, B, shift, n) and _gale_leq(B, A, shift, n):
                    assert A == B


@given(st.integers(0, 6), st.data())
@settings(max_examples=30, deadline=None)
def test_gale_leq_transitive(shift_off, data):
    n = 7
    subsets = [frozenset(s) for s in combinations(range(1, n + 1), 3)]
    A = data.draw(st.sampled_from(subsets))
    B = data.draw(st.sampled_from(subsets))
    C = data.draw(st.sampled_from(subsets))
    shift = shift_off + 1
    if _gale_leq(A, B, shift, n) and _gale_leq(B, C, shift, n):
        assert _gale_leq(A, C, shift, n)


def test_flip_is_an_involution(gr37):
    for mu in enumerate_matchings(gr37):
        for v in gr37.vertices:
            if v.is_boundary:
                continue
            nu = flip(gr37, mu, v.id)
            if nu is not None:
                assert nu != mu
                assert boundary_value(gr37, nu) == boundary_value(gr37, mu)
                assert flip(gr37, nu, v.id) == mu


@pytest.mark.parametrize("name", ["gr37", "uniform-2-4"])
def test_flip_graph_connected_per_boundary(name):
    model = fx.FIXTURE_BUILDERS[name]()
    internals = [v.id for v in model.vertices if not v.is_boundary]
    for I in positroid(model):
        pool = {mu.arrow_set for mu in matchings_with_boundary(model, I)}
        start = next(iter(pool))
        seen = {start}
        stack = [Matching(start)]
        while stack:
            cur = stack.pop()
            for j in internals:
                nxt = flip(model, cur, j)
                if nxt is not None and nxt.arrow_set not in seen:
                    seen.add(nxt.arrow_set)
                    stack.append(nxt)
        assert seen == pool


def test_height_zero_against_self(gr37):
    mu = enumerate_matchings(gr37)[0]
    h = height(gr37, mu, mu)
    assert all(val == 0 for _, val in h.values)


def test_height_requires_equal_boundary(gr37):
    by_boundary = {}
    for mu in enumerate_matchings(gr37):
        by_boundary.setdefault(boundary_value(gr37, mu), mu)
    two = list(by_boundary.values())[:2]
    with pytest.raises(ValueError):
        height(gr37, two[0], two[1])


@pytest.mark.parametrize("name", ["gr37", "uniform-2-4"])
def test_extremes_are_unique_height_extrema(name):
    model = fx.FIXTURE_BUILDERS[name]()
    for I in positroid(model):
        lo, hi = extreme_matchings(model, I)
        pool = matchings_with_boundary(model, I)
        assert lo.arrow_set in {m.arrow_set for m in pool}
        assert hi.arrow_set in {m.arrow_set for m in pool}
        for mu in pool:
            h_lo = height(model, mu, lo)  # heights measured from the minimum
            assert all(v >= 0 for _, v in h_lo.values)
            h_hi = height(model, hi, mu)
            assert all(v >= 0 for _, v in h_hi.values)


@pytest.mark.parametrize("name", ["gr37", "uniform-2-4"])
def test_support_subgraph_intersection_bijection(name):
    model = fx.FIXTURE_BUILDERS[name]()
    for I in positroid(model):
        dual = support_subgraph(model, I)
        covers = enumerate_dual_covers(dual)
        graph_arrows = ({e.arrow_id for e in dual.edges}
                        | {h.arrow_id for h in dual.half_edges})
        pool = matchings_with_boundary(model, I)
        images = [frozenset(mu.arrow_set & graph_arrows) for mu in pool]
        assert len(set(images)) == len(pool)  # injective
        assert set(images) == covers          # surjective onto the covers
