"""Strand extraction, consistency checking, and tile labels."""

import pytest

from discdimer import fixtures as fx
from discdimer.model import opposite, type_of
from discdimer.strands import (boundary_tile, check_postnikov, label_table,
                               necklaces, require_consistent, source_labels,
                               strand_permutation, strands, target_labels)

CONSISTENT_FIXTURES = [n for n in sorted(fx.FIXTURE_BUILDERS) if n != "inconsistent"]

GR37_PERMUTATION = {1: 5, 2: 4, 3: 1, 4: 6, 5: 7, 6: 2, 7: 3}


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_consistent_fixtures_pass(name):
    report = check_postnikov(fx.FIXTURE_BUILDERS[name]())
    assert report.passed


def test_inconsistent_fixture_fails(inconsistent):
    report = check_postnikov(inconsistent)
    assert not report.passed
    assert report.closed_loop_arrows  # fails via a closed zig-zag loop
    with pytest.raises(ValueError):
        require_consistent(inconsistent)


def test_gr37_permutation(gr37):
    assert strand_permutation(gr37) == GR37_PERMUTATION


@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 7)])
def test_uniform_permutation_is_shift(k, n):
    perm = strand_permutation(fx.build_uniform(k, n))
    assert perm == {i: (i + k - 1) % n + 1 for i in range(1, n + 1)}


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_strands_cross_every_arrow_twice(name):
    model = fx.FIXTURE_BUILDERS[name]()
    passages = {a.id: 0 for a in model.arrows}
    for s in strands(model):
        for aid in s.arrows:
            passages[aid] += 1
    assert all(c == 2 for c in passages.values())


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_label_sizes(name):
    model = fx.FIXTURE_BUILDERS[name]()
    k, n = type_of(model)
    table = label_table(model)
    assert table.k == k and table.n == n
    assert all(len(lab) == k for lab in table.source.values())
    assert all(len(lab) == k for lab in table.target.values())
    assert set(table.source) == {v.id for v in model.vertices}


@pytest.mark.parametrize("name", CONSISTENT_FIXTURES)
def test_boundary_tile_labels_are_necklaces(name):
    model = fx.FIXTURE_BUILDERS[name]()
    sneck, tneck = necklaces(model)
    src, tgt = source_labels(model), target_labels(model)
    n = model.n
    for m in range(1, n + 1):
        tile = boundary_tile(model, m)
        assert src[tile] == sneck[m]
        assert tgt[tile] == tneck[m]


def test_target_labels_are_permuted_sources(gr37):
    # target label of a tile = image of its source label under the strand
    # permutation of the opposite reading: each source strand contributes
    # its endpoint.
    perm = strand_permutation(gr37)
    src, tgt = source_labels(gr37), target_labels(gr37)
    for v, lab in src.items():
        assert tgt[v] == frozenset(perm[i] for i in lab)


def test_opposite_complements_labels(gr37):
    # reversing all strands swaps source/target and complements each label
    # (the opposite model has type (n-k, n))
    op = opposite(gr37)
    full = frozenset(range(1, 8))
    assert source_labels(op) == {v: full - lab for v, lab in target_labels(gr37).items()}
    assert target_labels(op) == {v: full - lab for v, lab in source_labels(gr37).items()}
