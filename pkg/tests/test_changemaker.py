"""Changemaker predicates, pairing profiles, census counts, and the
loaded-pairings certification."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from e8cm import e8
from e8cm.changemaker import (
    EnumerationCapError,
    Tau,
    _cluster_masks,
    _pair_blocks,
    changemaker_tails,
    check_loaded_pairings,
    count_e8_changemakers,
    enumerate_e8_changemakers,
    is_changemaker,
    is_e8_changemaker,
    max_norm_small_n,
    pairing_profile,
    parity_interval,
    satisfies_lemma_constraints,
    signed_subset_sums,
)


def test_parity_interval():
    assert parity_interval(0, 0) == {0}
    assert parity_interval(-4, 4) == {-4, -2, 0, 2, 4}
    assert parity_interval(3, 7) == {3, 5, 7}
    with pytest.raises(ValueError):
        parity_interval(0, 3)
    with pytest.raises(ValueError):
        parity_interval(2, 0)


def test_is_changemaker():
    assert is_changemaker((1, 1, 2))
    assert not is_changemaker((1, 3))
    assert is_changemaker(())
    assert is_changemaker((0, 0, 1))
    assert not is_changemaker((2,))
    with pytest.raises(ValueError):
        is_changemaker((2, 1))
    with pytest.raises(ValueError):
        is_changemaker((-1, 0))


@given(
    st.lists(st.integers(min_value=0, max_value=6), min_size=0, max_size=8)
)
def test_changemaker_definition_equivalence(entries):
    """The prefix-sum condition agrees with the signed sums filling the
    full parity interval."""
    sig = tuple(sorted(entries))
    total = sum(sig)
    fills = signed_subset_sums(sig) == parity_interval(-total, total)
    assert is_changemaker(sig) == fills


def test_tau_normalizes_on_construction():
    t = Tau(s=(0, 0, 0, 0, 0, 0, 0, -1), sigma=(2, 1))
    assert t.sigma == (1, 2)
    assert all(x >= 0 for x in t.s_star)
    assert t.norm == e8.norm(t.s) + 5


def test_tau_json_round_trip():
    t = Tau.from_dual((0, 1, 3, 0, 0, 0, 0, 0), (1, 1))
    assert Tau.from_json(t.to_json()) == t
    assert t.to_json() == {"s_star": [0, 1, 3, 0, 0, 0, 0, 0], "sigma": [1, 1]}


def test_pairing_profile_examples():
    p = pairing_profile(Tau(s=(0,) * 8, sigma=(1, 1, 2)))
    assert (p.c, p.C) == (4, 8)
    p = pairing_profile(Tau(s=e8.HIGHEST_ROOT, sigma=(1,)))
    assert (p.c, p.C) == (1, 5)
    p = pairing_profile(Tau.from_dual((0, 0, 1, 0, 0, 0, 0, 0), ()))
    assert (p.c, p.C) == (0, 8)


def _brute_profile(t):
    """Pairing values straight from the definitions, no reuse of the
    module's set arithmetic."""
    sums = {0}
    for v in t.sigma:
        sums = {x + v for x in sums} | {x - v for x in sums}
    s_star = t.s_star
    doubles = set()
    for r in e8.roots():
        d = sum(a * b for a, b in zip(r, s_star))
        doubles |= {2 * d + m for m in sums}
    pushed = set()
    for i in range(len(t.sigma)):
        rest = t.sigma[:i] + t.sigma[i + 1 :]
        sub = {0}
        for v in rest:
            sub = {x + v for x in sub} | {x - v for x in sub}
        pushed |= {x + 3 * t.sigma[i] for x in sub}
        pushed |= {x - 3 * t.sigma[i] for x in sub}
    return sums, doubles | pushed


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=3), min_size=0, max_size=4),
    st.lists(st.integers(min_value=0, max_value=2), min_size=8, max_size=8),
)
def test_pairing_profile_matches_brute_force(entries, s_star):
    t = Tau.from_dual(s_star, tuple(sorted(entries)))
    prof = pairing_profile(t)
    sums, big = _brute_profile(t)
    assert prof.short_set == frozenset(sums)
    assert prof.Short_set == frozenset(sums) | frozenset(big)
    assert prof.c == max(sums)
    if big:
        assert prof.C == max(big)


def test_is_e8_changemaker_examples():
    assert is_e8_changemaker(Tau(s=(0,) * 8, sigma=(1, 1, 2)))
    assert is_e8_changemaker(Tau(s=e8.HIGHEST_ROOT, sigma=(1,)))
    assert not is_e8_changemaker(
        Tau.from_dual((3, 0, 0, 0, 0, 0, 0, 0), (1,))
    )


def test_lemma_constraint_examples():
    ok = Tau.from_dual((0, 1, 3, 0, 0, 0, 0, 0), (1, 1))
    assert satisfies_lemma_constraints(ok) == []
    bad = Tau.from_dual((3, 0, 0, 0, 0, 0, 0, 0), (1,))
    assert satisfies_lemma_constraints(bad) == ["1"]
    edge = Tau.from_dual((2, 0, 0, 0, 0, 0, 0, 0), (1,))
    assert satisfies_lemma_constraints(edge) == []


def test_changemaker_tails_small():
    assert changemaker_tails(-1) == [()]
    assert changemaker_tails(0) == [(0,), (1,)]
    assert (1, 1, 2) in changemaker_tails(2)
    assert all(is_changemaker(t) for t in changemaker_tails(3))


# --- census ---------------------------------------------------------------


@pytest.fixture(scope="module")
def census_empty_tail():
    return enumerate_e8_changemakers(-1)


def test_census_in_e8_alone(census_empty_tail):
    assert len(census_empty_tail) == 1003
    assert count_e8_changemakers(-1) == 1003


def test_census_contains_complement_witnesses(census_empty_tail):
    found = {t.s_star for t in census_empty_tail}
    assert (0, 0, 1, 0, 0, 0, 0, 0) in found
    assert (1, 0, 0, 1, 0, 0, 0, 0) in found


def test_census_members_verify(census_empty_tail):
    for t in census_empty_tail:
        assert not t.is_zero()
        assert is_e8_changemaker(t)
        assert satisfies_lemma_constraints(t) == []


def test_census_big_norm_members_bounded(census_empty_tail):
    # at squared length four and beyond, no achievable pairing exceeds
    # the candidate's own norm
    for t in census_empty_tail:
        if t.norm >= 4:
            assert pairing_profile(t).C <= t.norm


def test_census_counts_one_extra_coordinate():
    assert count_e8_changemakers(0) == 35_404


def test_census_counts_two_extra_coordinates():
    assert count_e8_changemakers(1) == 2_928_737


def test_census_spot_tails_three_coordinates():
    assert count_e8_changemakers(2, sigma_filter=(0, 0, 0)) == 1003
    assert count_e8_changemakers(2, sigma_filter=(0, 0, 1)) == 34_401
    assert count_e8_changemakers(2, sigma_filter=(0, 1, 1)) == 390_578


def test_count_matches_enumerate_on_samples():
    for n, sig in [(0, (1,)), (1, (0, 0)), (2, (0, 0, 1))]:
        assert count_e8_changemakers(n, sigma_filter=sig) == len(
            enumerate_e8_changemakers(n, sigma_filter=sig)
        )


def test_census_norm_cap_guard():
    with pytest.raises(EnumerationCapError):
        count_e8_changemakers(6)
    with pytest.raises(ValueError):
        count_e8_changemakers(7)


def test_max_norm_witness():
    best, t = max_norm_small_n()
    assert best == 25_541
    assert best <= 100_000
    assert t.s_star == (4, 4, 8, 28, 4, 4, 4, 4)
    assert t.sigma == (1, 2)
    assert t.norm == best


def test_max_norm_witness_in_census():
    # membership checked on the raw sweep output; materializing the full
    # multi-million-member census here would drown the suite
    from e8cm.changemaker import _SigmaContext, _accepted_row_arrays

    witness = (4, 4, 8, 28, 4, 4, 4, 4)
    ctx = _SigmaContext((1, 2))
    assert any(
        (rows == np.array(witness, dtype=rows.dtype)).all(axis=1).any()
        for rows in _accepted_row_arrays(ctx)
    )


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=0, max_value=119),
    st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=3),
    st.randoms(use_true_random=False),
)
def test_predicates_ignore_presentation(idx, entries, rng):
    """Reflected chamber parts and shuffled tails give the same candidate."""
    base = e8.POSITIVE_ROOTS[idx]
    v = np.array(base, dtype=int)
    gram = np.array(e8.GRAM, dtype=int)
    for _ in range(6):
        i = rng.randrange(8)
        coeff = int(gram[i] @ v)
        v[i] -= coeff  # simple reflection in root coordinates
    shuffled = list(entries)
    rng.shuffle(shuffled)
    left = Tau(s=tuple(int(x) for x in v), sigma=tuple(shuffled))
    right = Tau(s=base, sigma=tuple(sorted(entries)))
    assert left == right
    assert is_e8_changemaker(left) == is_e8_changemaker(right)


# --- fast-path structure behind the sweep ---------------------------------


def test_root_walks_descend_through_roots():
    """Between comparable roots there is always a one-step descent, so
    pairing values along any up-set chain move by one dual coordinate at
    a time."""
    roots = set(e8.POSITIVE_ROOTS)
    for r in roots:
        for o in roots:
            if r == o or not e8.root_leq(o, r):
                continue
            steps = [
                tuple(v - (j == k) for j, v in enumerate(r))
                for k in range(8)
                if r[k] > o[k]
            ]
            assert any(
                s in roots and all(a <= b for a, b in zip(o, s))
                for s in steps
            )


def test_oversize_direction_levels_have_unique_bottoms():
    """Each up-set of an oversize direction has a single componentwise
    minimum, sitting at its boundary level; minima ascend with the level."""
    expected = {
        2: [
            (0, 1, 0, 0, 0, 0, 0, 0),
            (3, 2, 2, 1, 2, 1, 0, 0),
            (5, 3, 3, 1, 4, 3, 2, 1),
        ],
        3: [
            (0, 0, 1, 0, 0, 0, 0, 0),
            (2, 1, 2, 1, 1, 0, 0, 0),
            (4, 2, 3, 1, 3, 2, 1, 0),
            (5, 2, 4, 2, 4, 3, 2, 1),
        ],
        4: [
            (0, 0, 0, 1, 0, 0, 0, 0),
            (4, 2, 3, 2, 3, 2, 1, 0),
        ],
    }
    for direction, chain in expected.items():
        top = e8.HIGHEST_ROOT[direction - 1]
        assert len(chain) == top
        for level, want in zip(range(1, top + 1), chain):
            upper = [
                r for r in e8.POSITIVE_ROOTS if r[direction - 1] >= level
            ]
            mins = [
                r
                for r in upper
                if not any(o != r and e8.root_leq(o, r) for o in upper)
            ]
            assert mins == [want]
            assert want[direction - 1] == level
        for lo, hi in zip(chain, chain[1:]):
            assert e8.root_leq(lo, hi)


def test_cluster_masks_cover_documented_cuts():
    cuts = [(i, len(u), len(d)) for i, u, d in _cluster_masks()]
    assert [c[0] for c in cuts] == [2, 2, 2, 3, 3, 3, 3, 4, 4]
    for _, n_up, n_down in cuts:
        assert n_up == 1  # unique minimum per level, per the chain test
        assert n_down >= 1


def test_pair_blocks_partition_and_chain():
    """Blocks over a coordinate pair walk down internally: every
    non-bottom member steps down inside its block, and bottoms are unique
    off the base block."""
    roots = set(e8.POSITIVE_ROOTS)
    for i in (2, 3):
        seen = 0
        for bottoms, tops in _pair_blocks(i):
            seen += 1
            assert bottoms and tops
            key = (bottoms[0][3], bottoms[0][i - 1])
            members = [
                r
                for r in roots
                if (r[3], r[i - 1]) == key
            ]
            assert set(bottoms) <= set(members)
            assert len(bottoms) == (6 if key == (0, 0) else 1)
            for r in members:
                if r in bottoms:
                    continue
                assert any(
                    k not in (i - 1, 3)
                    and r[k]
                    and tuple(v - (j == k) for j, v in enumerate(r)) in roots
                    for k in range(8)
                )


def test_loaded_pairings_certify():
    assert check_loaded_pairings() == []
