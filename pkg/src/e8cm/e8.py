"""The E8 root lattice in simple-root coordinates.

Everything here is expressed with respect to a fixed basis of simple roots
e_1, ..., e_8 whose Dynkin diagram is the chain e_4 - e_3 - e_1 - e_5 - e_6 -
e_7 - e_8 with e_2 hanging off e_1.  A vector v is stored as its coefficient
tuple in that basis; its dual coordinates v*_i = <v, e_i> are the rows of
GRAM @ v.  The table of positive roots is frozen data, and the generator
`_grow_positive_roots` reproduces it from the Gram matrix alone (the tests
assert bit-equality).
"""

from __future__ import annotations

import numpy as np

# Gram matrix of E8 in the simple-root basis, and its (integer) inverse.
GRAM = np.array(
    [
        [2, -1, -1, 0, -1, 0, 0, 0],
        [-1, 2, 0, 0, 0, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0, 0],
        [0, 0, -1, 2, 0, 0, 0, 0],
        [-1, 0, 0, 0, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, 0, -1, 2],
    ],
    dtype=np.int64,
)

GRAM_INV = np.array(
    [
        [30, 15, 20, 10, 24, 18, 12, 6],
        [15, 8, 10, 5, 12, 9, 6, 3],
        [20, 10, 14, 7, 16, 12, 8, 4],
        [10, 5, 7, 4, 8, 6, 4, 2],
        [24, 12, 16, 8, 20, 15, 10, 5],
        [18, 9, 12, 6, 15, 12, 8, 4],
        [12, 6, 8, 4, 10, 8, 6, 3],
        [6, 3, 4, 2, 5, 4, 3, 2],
    ],
    dtype=np.int64,
)

# The 120 positive roots in ascending lexicographic order of their
# simple-root coordinates.  POSITIVE_ROOTS[i] is the root R_{i+1}; the
# indices used elsewhere in the package (e.g. root 105, root 113) are
# 1-based positions in this list.
POSITIVE_ROOTS = (
    (0, 0, 0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 1, 1, 1),
    (0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 1, 1, 1, 0),
    (0, 0, 0, 0, 1, 1, 1, 1),
    (0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 1, 1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 0, 0, 0),
    (1, 0, 0, 0, 1, 1, 0, 0),
    (1, 0, 0, 0, 1, 1, 1, 0),
    (1, 0, 0, 0, 1, 1, 1, 1),
    (1, 0, 1, 0, 0, 0, 0, 0),
    (1, 0, 1, 0, 1, 0, 0, 0),
    (1, 0, 1, 0, 1, 1, 0, 0),
    (1, 0, 1, 0, 1, 1, 1, 0),
    (1, 0, 1, 0, 1, 1, 1, 1),
    (1, 0, 1, 1, 0, 0, 0, 0),
    (1, 0, 1, 1, 1, 0, 0, 0),
    (1, 0, 1, 1, 1, 1, 0, 0),
    (1, 0, 1, 1, 1, 1, 1, 0),
    (1, 0, 1, 1, 1, 1, 1, 1),
    (1, 1, 0, 0, 0, 0, 0, 0),
    (1, 1, 0, 0, 1, 0, 0, 0),
    (1, 1, 0, 0, 1, 1, 0, 0),
    (1, 1, 0, 0, 1, 1, 1, 0),
    (1, 1, 0, 0, 1, 1, 1, 1),
    (1, 1, 1, 0, 0, 0, 0, 0),
    (1, 1, 1, 0, 1, 0, 0, 0),
    (1, 1, 1, 0, 1, 1, 0, 0),
    (1, 1, 1, 0, 1, 1, 1, 0),
    (1, 1, 1, 0, 1, 1, 1, 1),
    (1, 1, 1, 1, 0, 0, 0, 0),
    (1, 1, 1, 1, 1, 0, 0, 0),
    (1, 1, 1, 1, 1, 1, 0, 0),
    (1, 1, 1, 1, 1, 1, 1, 0),
    (1, 1, 1, 1, 1, 1, 1, 1),
    (2, 1, 1, 0, 1, 0, 0, 0),
    (2, 1, 1, 0, 1, 1, 0, 0),
    (2, 1, 1, 0, 1, 1, 1, 0),
    (2, 1, 1, 0, 1, 1, 1, 1),
    (2, 1, 1, 0, 2, 1, 0, 0),
    (2, 1, 1, 0, 2, 1, 1, 0),
    (2, 1, 1, 0, 2, 1, 1, 1),
    (2, 1, 1, 0, 2, 2, 1, 0),
    (2, 1, 1, 0, 2, 2, 1, 1),
    (2, 1, 1, 0, 2, 2, 2, 1),
    (2, 1, 1, 1, 1, 0, 0, 0),
    (2, 1, 1, 1, 1, 1, 0, 0),
    (2, 1, 1, 1, 1, 1, 1, 0),
    (2, 1, 1, 1, 1, 1, 1, 1),
    (2, 1, 1, 1, 2, 1, 0, 0),
    (2, 1, 1, 1, 2, 1, 1, 0),
    (2, 1, 1, 1, 2, 1, 1, 1),
    (2, 1, 1, 1, 2, 2, 1, 0),
    (2, 1, 1, 1, 2, 2, 1, 1),
    (2, 1, 1, 1, 2, 2, 2, 1),
    (2, 1, 2, 1, 1, 0, 0, 0),
    (2, 1, 2, 1, 1, 1, 0, 0),
    (2, 1, 2, 1, 1, 1, 1, 0),
    (2, 1, 2, 1, 1, 1, 1, 1),
    (2, 1, 2, 1, 2, 1, 0, 0),
    (2, 1, 2, 1, 2, 1, 1, 0),
    (2, 1, 2, 1, 2, 1, 1, 1),
    (2, 1, 2, 1, 2, 2, 1, 0),
    (2, 1, 2, 1, 2, 2, 1, 1),
    (2, 1, 2, 1, 2, 2, 2, 1),
    (3, 1, 2, 1, 2, 1, 0, 0),
    (3, 1, 2, 1, 2, 1, 1, 0),
    (3, 1, 2, 1, 2, 1, 1, 1),
    (3, 1, 2, 1, 2, 2, 1, 0),
    (3, 1, 2, 1, 2, 2, 1, 1),
    (3, 1, 2, 1, 2, 2, 2, 1),
    (3, 1, 2, 1, 3, 2, 1, 0),
    (3, 1, 2, 1, 3, 2, 1, 1),
    (3, 1, 2, 1, 3, 2, 2, 1),
    (3, 1, 2, 1, 3, 3, 2, 1),
    (3, 2, 2, 1, 2, 1, 0, 0),
    (3, 2, 2, 1, 2, 1, 1, 0),
    (3, 2, 2, 1, 2, 1, 1, 1),
    (3, 2, 2, 1, 2, 2, 1, 0),
    (3, 2, 2, 1, 2, 2, 1, 1),
    (3, 2, 2, 1, 2, 2, 2, 1),
    (3, 2, 2, 1, 3, 2, 1, 0),
    (3, 2, 2, 1, 3, 2, 1, 1),
    (3, 2, 2, 1, 3, 2, 2, 1),
    (3, 2, 2, 1, 3, 3, 2, 1),
    (4, 2, 2, 1, 3, 2, 1, 0),
    (4, 2, 2, 1, 3, 2, 1, 1),
    (4, 2, 2, 1, 3, 2, 2, 1),
    (4, 2, 2, 1, 3, 3, 2, 1),
    (4, 2, 2, 1, 4, 3, 2, 1),
    (4, 2, 3, 1, 3, 2, 1, 0),
    (4, 2, 3, 1, 3, 2, 1, 1),
    (4, 2, 3, 1, 3, 2, 2, 1),
    (4, 2, 3, 1, 3, 3, 2, 1),
    (4, 2, 3, 1, 4, 3, 2, 1),
    (4, 2, 3, 2, 3, 2, 1, 0),
    (4, 2, 3, 2, 3, 2, 1, 1),
    (4, 2, 3, 2, 3, 2, 2, 1),
    (4, 2, 3, 2, 3, 3, 2, 1),
    (4, 2, 3, 2, 4, 3, 2, 1),
    (5, 2, 3, 1, 4, 3, 2, 1),
    (5, 2, 3, 2, 4, 3, 2, 1),
    (5, 2, 4, 2, 4, 3, 2, 1),
    (5, 3, 3, 1, 4, 3, 2, 1),
    (5, 3, 3, 2, 4, 3, 2, 1),
    (5, 3, 4, 2, 4, 3, 2, 1),
    (6, 3, 4, 2, 4, 3, 2, 1),
    (6, 3, 4, 2, 5, 3, 2, 1),
    (6, 3, 4, 2, 5, 4, 2, 1),
    (6, 3, 4, 2, 5, 4, 3, 1),
    (6, 3, 4, 2, 5, 4, 3, 2),
)

HIGHEST_ROOT = POSITIVE_ROOTS[-1]


def pairing(u, v) -> int:
    """Inner product of two vectors given in simple-root coordinates."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return int(u @ GRAM @ v)


def norm(v) -> int:
    return pairing(v, v)


def dual_coords(v) -> tuple[int, ...]:
    """The dual coordinates v*_i = <v, e_i> of a simple-root-coordinate vector."""
    return tuple(int(x) for x in GRAM @ np.asarray(v, dtype=np.int64))


def vector_from_dual(s_star) -> tuple[int, ...]:
    """Invert dual_coords; exact because the Gram matrix is unimodular."""
    return tuple(int(x) for x in GRAM_INV @ np.asarray(s_star, dtype=np.int64))


def norm_from_dual(s_star) -> int:
    s = np.asarray(s_star, dtype=np.int64)
    return int(s @ GRAM_INV @ s)


def _grow_positive_roots() -> list[tuple[int, ...]]:
    """Rebuild the positive roots from the simple ones by height induction.

    In a simply laced lattice, R + e_i is a root exactly when <R, e_i> = -1,
    so breadth-first growth from the simple roots reaches every positive
    root.  Returned in ascending lexicographic order.
    """
    found = {tuple(int(v) for v in row) for row in np.eye(8, dtype=np.int64)}
    frontier = list(found)
    while frontier:
        nxt = []
        for r in frontier:
            star = GRAM @ np.array(r, dtype=np.int64)
            for i in range(8):
                if star[i] == -1:
                    cand = list(r)
                    cand[i] += 1
                    cand = tuple(cand)
                    if cand not in found:
                        found.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return sorted(found)


def roots() -> list[tuple[int, ...]]:
    """All 240 roots: the frozen positive table and its negatives."""
    neg = [tuple(-x for x in r) for r in POSITIVE_ROOTS]
    return list(POSITIVE_ROOTS) + neg


def regenerated_positive_roots() -> list[tuple[int, ...]]:
    return _grow_positive_roots()


def root_leq(a, b) -> bool:
    """Componentwise order on positive roots."""
    return all(x <= y for x, y in zip(a, b))


def hasse_edges() -> list[tuple[int, int]]:
    """Covering pairs (i, j) of 1-based root indices with R_i covered by R_j.

    A cover in this poset always raises a single coordinate by one, so it is
    enough to look at pairs whose coordinate sums differ by one.
    """
    by_height: dict[int, list[int]] = {}
    for idx, r in enumerate(POSITIVE_ROOTS):
        by_height.setdefault(sum(r), []).append(idx)
    edges = []
    for h, lows in sorted(by_height.items()):
        for i in lows:
            for j in by_height.get(h + 1, []):
                if root_leq(POSITIVE_ROOTS[i], POSITIVE_ROOTS[j]):
                    edges.append((i + 1, j + 1))
    return edges


def minimal_roots_not_below(index: int) -> list[int]:
    """1-based indices of the minimal positive roots R with R not <= R_index."""
    above = [
        i
        for i, r in enumerate(POSITIVE_ROOTS)
        if not root_leq(r, POSITIVE_ROOTS[index - 1])
    ]
    mins = []
    for i in above:
        if not any(
            j != i and root_leq(POSITIVE_ROOTS[j], POSITIVE_ROOTS[i]) for j in above
        ):
            mins.append(i + 1)
    return mins


def in_chamber(v) -> bool:
    """True when every dual coordinate of v is nonnegative."""
    return all(x >= 0 for x in dual_coords(v))


def weyl_reduce(v) -> tuple[tuple[int, ...], np.ndarray]:
    """Reflect v into the fundamental chamber.

    Repeatedly reflects through the lowest-index simple root pairing
    negatively with the vector.  Returns the chamber representative together
    with the 8x8 integer transform U satisfying U @ v = representative.
    """
    v = np.asarray(v, dtype=np.int64).copy()
    u = np.eye(8, dtype=np.int64)
    while True:
        star = GRAM @ v
        bad = np.nonzero(star < 0)[0]
        if bad.size == 0:
            return tuple(int(x) for x in v), u
        i = int(bad[0])
        refl = np.eye(8, dtype=np.int64)
        refl[i] -= GRAM[i]  # x -> x - <x, e_i> e_i, applied on the left
        v[i] -= int(star[i])
        u = refl @ u
