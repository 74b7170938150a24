"""Frozen facts about the E8 root system and its simple-root presentation."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from e8cm import e8


def test_gram_is_symmetric_and_even():
    g = np.array(e8.GRAM)
    assert (g == g.T).all()
    assert all(g[i, i] == 2 for i in range(8))


def test_gram_inverse_is_exact():
    a = np.array(e8.GRAM, dtype=object)
    ainv = np.array(e8.GRAM_INV, dtype=object)
    assert (a @ ainv == np.eye(8, dtype=object)).all()


def test_gram_inverse_diagonal():
    assert tuple(e8.GRAM_INV[i][i] for i in range(8)) == (30, 8, 14, 4, 20, 12, 6, 2)


def test_positive_root_count():
    assert len(e8.POSITIVE_ROOTS) == 120
    assert len(e8.roots()) == 240


def test_all_roots_have_norm_two():
    assert all(e8.norm(r) == 2 for r in e8.POSITIVE_ROOTS)


def test_frozen_table_matches_regeneration():
    assert e8.regenerated_positive_roots() == list(e8.POSITIVE_ROOTS)


def test_table_is_sorted_lex():
    assert list(e8.POSITIVE_ROOTS) == sorted(e8.POSITIVE_ROOTS)


def test_highest_root():
    assert e8.HIGHEST_ROOT == (6, 3, 4, 2, 5, 4, 3, 2)
    assert e8.POSITIVE_ROOTS[-1] == e8.HIGHEST_ROOT


def test_highest_root_is_unique_chamber_root():
    chamber = [r for r in e8.POSITIVE_ROOTS if e8.in_chamber(r)]
    assert chamber == [e8.HIGHEST_ROOT]


def test_root_poset_extremes():
    # minimal roots of complements of principal down-sets, by 1-based index
    assert e8.minimal_roots_not_below(113) == [105]
    assert e8.minimal_roots_not_below(84) == [85]
    assert e8.minimal_roots_not_below(99) == [100]
    assert e8.minimal_roots_not_below(110) == [105, 113]


def test_hasse_edges_are_covers():
    table = e8.POSITIVE_ROOTS
    for i, j in e8.hasse_edges():
        lo, hi = table[i - 1], table[j - 1]
        assert e8.root_leq(lo, hi) and lo != hi
        assert sum(hi) == sum(lo) + 1  # covers raise height by exactly one


def test_every_positive_root_below_highest():
    assert all(e8.root_leq(r, e8.HIGHEST_ROOT) for r in e8.POSITIVE_ROOTS)


def test_dual_coordinate_roundtrip():
    for r in e8.POSITIVE_ROOTS[:10] + (e8.HIGHEST_ROOT,):
        assert e8.vector_from_dual(e8.dual_coords(r)) == r


def test_norm_from_dual_agrees():
    for r in (e8.POSITIVE_ROOTS[0], e8.POSITIVE_ROOTS[57], e8.HIGHEST_ROOT):
        assert e8.norm_from_dual(e8.dual_coords(r)) == 2


small_vec = st.tuples(*[st.integers(-6, 6)] * 8)


@given(small_vec)
def test_weyl_reduce_lands_in_chamber(v):
    w, u = e8.weyl_reduce(v)
    assert e8.in_chamber(w)
    assert e8.norm(w) == e8.norm(v)
    assert tuple(int(x) for x in np.array(u) @ np.array(v)) == w


@given(small_vec)
def test_weyl_reduce_is_idempotent(v):
    w, _ = e8.weyl_reduce(v)
    w2, _ = e8.weyl_reduce(w)
    assert w2 == w


def test_all_roots_reduce_to_highest_root():
    for r in e8.roots():
        w, _ = e8.weyl_reduce(r)
        assert w == e8.HIGHEST_ROOT


def test_pairing_examples():
    e1 = (1, 0, 0, 0, 0, 0, 0, 0)
    e2 = (0, 1, 0, 0, 0, 0, 0, 0)
    assert e8.pairing(e1, e2) == -1
    assert e8.pairing(e8.HIGHEST_ROOT, e8.HIGHEST_ROOT) == 2
