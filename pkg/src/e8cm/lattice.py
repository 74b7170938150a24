"""Exact computations in positive-definite integer lattices.

A lattice is presented by its Gram matrix; all vectors are integer
coordinate tuples with respect to the presenting basis.  Enumeration is a
Fincke-Pohst walk with Fraction arithmetic, so results are exact and
deterministic.  Basis-level utilities (row HNF, single-row kernels, LLL
reduction of a Gram matrix) are kept here too since everything downstream
leans on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class DecompositionError(Exception):
    """The irreducible vectors of the lattice fail to generate it."""


@dataclass(frozen=True)
class Lattice:
    """A positive-definite integer lattice, presented by a Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        if any(len(row) != len(g) for row in g):
            raise ValueError("gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(len(g)) for j in range(len(g))):
            raise ValueError("gram matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows) -> "Lattice":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pairing(self, x, y) -> int:
        g = self.gram
        return sum(
            int(x[i]) * g[i][j] * int(y[j])
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def norm(self, x) -> int:
        return self.pairing(x, x)

    def discriminant(self) -> int:
        return abs(det_int([list(row) for row in self.gram]))


def det_int(m: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_rows(rows) -> list[list[int]]:
    """Row-style Hermite normal form; returns the nonzero rows.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot).  The row span is unchanged, so this is a canonical basis for
    the integer span of the input rows.
    """
    a = [[int(x) for x in row] for row in rows]
    if not a:
        return []
    ncols = len(a[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == len(a):
            break
        # clear the column below pivot_row with gcd combinations
        for i in range(pivot_row + 1, len(a)):
            if a[i][col] == 0:
                continue
            if a[pivot_row][col] == 0:
                a[pivot_row], a[i] = a[i], a[pivot_row]
                continue
            g, x, y = _xgcd(a[pivot_row][col], a[i][col])
            p, q = a[pivot_row][col] // g, a[i][col] // g
            new_top = [x * u + y * v for u, v in zip(a[pivot_row], a[i])]
            new_bot = [q * u - p * v for u, v in zip(a[pivot_row], a[i])]
            a[pivot_row], a[i] = new_top, new_bot
        if a[pivot_row][col] == 0:
            continue
        if a[pivot_row][col] < 0:
            a[pivot_row] = [-x for x in a[pivot_row]]
        for i in range(pivot_row):
            q = a[i][col] // a[pivot_row][col]
            if q:
                a[i] = [u - q * v for u, v in zip(a[i], a[pivot_row])]
        pivot_row += 1
    return [row for row in a if any(row)]


def row_kernel_basis(w) -> list[list[int]]:
    """Basis of the saturated sublattice {x in Z^r : x . w = 0}.

    Starts from the identity and combines basis rows pairwise with Bezout
    coefficients until a single row carries gcd(w); the others then span the
    kernel.  All steps are unimodular, so the kernel comes out saturated.
    """
    w = [int(x) for x in w]
    r = len(w)
    basis = [[int(i == j) for j in range(r)] for i in range(r)]
    vals = list(w)
    carrier = None
    for i in range(r):
        if vals[i] == 0:
            continue
        if carrier is None:
            carrier = i
            continue
        g, x, y = _xgcd(vals[carrier], vals[i])
        p, q = vals[carrier] // g, vals[i] // g
        new_c = [x * u + y * v for u, v in zip(basis[carrier], basis[i])]
        new_i = [q * u - p * v for u, v in zip(basis[carrier], basis[i])]
        basis[carrier], basis[i] = new_c, new_i
        vals[carrier], vals[i] = g, 0
    return [basis[i] for i in range(r) if i != carrier]


# ---------------------------------------------------------------------------
# Exact Fincke-Pohst enumeration


def _ldl(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Decompose Q(x) = sum_j d_j (x_j + sum_{l>j} m[j][l] x_l)^2 exactly."""
    r = len(gram)
    d: list[Fraction] = []
    m = [[Fraction(0)] * r for _ in range(r)]
    for j in range(r):
        dj = Fraction(gram[j][j]) - sum(
            d[k] * m[k][j] * m[k][j] for k in range(j)
        )
        if dj <= 0:
            raise ValueError("gram matrix is not positive definite")
        d.append(dj)
        for l in range(j + 1, r):
            num = Fraction(gram[j][l]) - sum(
                d[k] * m[k][j] * m[k][l] for k in range(j)
            )
            m[j][l] = num / dj
    return d, m


def enumerate_near(gram, center, cap) -> list[tuple[int, ...]]:
    """All integer x with Q(x - center) <= cap, Q the form of `gram`.

    `center` may be fractional.  The walk fixes coordinates from the last to
    the first; float square roots only seed candidate ranges, every accepted
    point passes an exact Fraction test.
    """
    r = len(gram)
    cap = Fraction(cap)
    if cap < 0:
        return []
    center = [Fraction(c) for c in center]
    d, m = _ldl(gram)
    out: list[tuple[int, ...]] = []
    x = [0] * r

    def walk(j: int, rem: Fraction):
        # offset of coordinate j induced by the already-fixed tail
        shift = sum(m[j][l] * (x[l] - center[l]) for l in range(j + 1, r))
        cj = center[j] - shift
        radius = math.sqrt(float(rem / d[j])) if rem > 0 else 0.0
        lo = math.floor(float(cj) - radius) - 1
        hi = math.ceil(float(cj) + radius) + 1
        for xj in range(lo, hi + 1):
            used = d[j] * (xj - cj) ** 2
            if used > rem:
                continue
            x[j] = xj
            if j == 0:
                out.append(tuple(x))
            else:
                walk(j - 1, rem - used)
        x[j] = 0

    walk(r - 1, cap)
    return out


def short_vectors(lat: Lattice, max_norm: int) -> list[tuple[int, ...]]:
    """All nonzero vectors of norm at most max_norm, in ascending
    lexicographic order of coordinates."""
    pts = enumerate_near(lat.gram, [0] * lat.rank, max_norm)
    return sorted(p for p in pts if any(p))


def norm_histogram(lat: Lattice, max_norm: int) -> dict[int, int]:
    hist: dict[int, int] = {}
    for v in short_vectors(lat, max_norm):
        n = lat.norm(v)
        hist[n] = hist.get(n, 0) + 1
    return hist


# ---------------------------------------------------------------------------
# LLL reduction of a Gram matrix


def gram_lll(gram, delta=Fraction(3, 4)) -> tuple[list[list[int]], list[list[int]]]:
    """LLL-reduce the quadratic form; returns (transform, reduced_gram).

    transform is unimodular with reduced = T . gram . T^t.  Gram-Schmidt
    data is recomputed from scratch after every change, which is plenty fast
    at the ranks used here and keeps the code honest.
    """
    g0 = [[int(x) for x in row] for row in gram]
    r = len(g0)
    t = [[int(i == j) for j in range(r)] for i in range(r)]

    def ip(i: int, j: int) -> int:
        return sum(t[i][a] * g0[a][b] * t[j][b] for a in range(r) for b in range(r))

    def gs() -> tuple[list[Fraction], list[list[Fraction]]]:
        bstar = []
        mu = [[Fraction(0)] * r for _ in range(r)]
        for i in range(r):
            bi = Fraction(ip(i, i))
            for j in range(i):
                mu[i][j] = (
                    Fraction(ip(i, j))
                    - sum(mu[i][k] * mu[j][k] * bstar[k] for k in range(j))
                ) / bstar[j]
                bi -= mu[i][j] ** 2 * bstar[j]
            bstar.append(bi)
        return bstar, mu

    k = 1
    while k < r:
        bstar, mu = gs()
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                t[k] = [a - q * b for a, b in zip(t[k], t[j])]
                bstar, mu = gs()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            t[k], t[k - 1] = t[k - 1], t[k]
            k = max(k - 1, 1)
    reduced = [[ip(i, j) for j in range(r)] for i in range(r)]
    return t, reduced


# ---------------------------------------------------------------------------
# Derived operations


def orthogonal_complement(lat: Lattice, t) -> tuple[Lattice, list[list[int]]]:
    """The saturated sublattice orthogonal to t, with its ambient basis.

    Returns (complement, rows) where rows[i] gives the i-th complement basis
    vector in the coordinates of `lat`, and complement.gram is the restricted
    form after LLL reduction.
    """
    if not any(t):
        raise ValueError("cannot take the complement of the zero vector")
    g = np.array(lat.gram, dtype=object)
    w = list(np.asarray(t, dtype=object) @ g)
    rows = row_kernel_basis(w)
    b = np.array(rows, dtype=object)
    sub = b @ g @ b.T
    tr, red = gram_lll(sub.tolist())
    rows_red = (np.array(tr, dtype=object) @ b).tolist()
    return Lattice.from_rows(red), [[int(x) for x in row] for row in rows_red]


def is_irreducible(lat: Lattice, v) -> bool:
    """True when v has no splitting v = x + y with x, y nonzero and
    <x, y> >= 0.

    The search over x is finite: |v| = |x| + |y| + 2<x,y> >= |x| + 1 for any
    witness, so |x| <= |v| - 1 and the norm-(|v|-1) ball suffices.
    """
    if not any(v):
        raise ValueError("the zero vector is neither reducible nor irreducible")
    nv = lat.norm(v)
    for x in enumerate_near(lat.gram, [0] * lat.rank, nv - 1):
        if not any(x):
            continue
        y = tuple(int(a) - int(b) for a, b in zip(v, x))
        if any(y) and lat.pairing(x, y) >= 0:
            return False
    return True


def is_breakable(lat: Lattice, v) -> bool:
    """True when v = x + y with |x|, |y| >= 3 and <x, y> = -1.

    Such a splitting forces |x| <= |v| - 1 because |v| = |x| + |y| - 2, so
    the candidate pool is the norm-(|v|-1) ball.
    """
    if not any(v):
        raise ValueError("the zero vector is not breakable")
    nv = lat.norm(v)
    if nv < 4:
        return False
    for x in enumerate_near(lat.gram, [0] * lat.rank, nv - 1):
        if not any(x):
            continue
        nx = lat.norm(x)
        if nx < 3:
            continue
        y = tuple(int(a) - int(b) for a, b in zip(v, x))
        if not any(y):
            continue
        if lat.pairing(x, y) == -1 and lat.norm(y) >= 3:
            return True
    return False


def characteristic_vectors(lat: Lattice, max_norm: int) -> list[tuple[int, ...]]:
    """All characteristic vectors of norm at most max_norm.

    c is characteristic when <c, b_i> = <b_i, b_i> mod 2 for every basis
    vector, a linear system over GF(2); each mod-2 solution class is then
    enumerated as a shifted copy of 2L.
    """
    r = lat.rank
    a = [[lat.gram[i][j] % 2 for j in range(r)] + [lat.gram[i][i] % 2] for i in range(r)]
    # Gaussian elimination over GF(2)
    pivots = []
    row = 0
    for col in range(r):
        sel = next((i for i in range(row, r) if a[i][col]), None)
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        for i in range(r):
            if i != row and a[i][col]:
                a[i] = [(x + y) % 2 for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    if any(a[i][r] for i in range(row, r)):
        return []  # no characteristic vectors; cannot happen for lattices
    particular = [0] * r
    for i, col in enumerate(pivots):
        particular[col] = a[i][r]
    free_cols = [c for c in range(r) if c not in pivots]
    kernel = []
    for fc in free_cols:
        vec = [0] * r
        vec[fc] = 1
        for i, col in enumerate(pivots):
            vec[col] = a[i][fc]
        kernel.append(vec)
    if len(kernel) > 16:
        raise ValueError("too many mod-2 solution classes to enumerate")
    out = []
    for bits in range(1 << len(kernel)):
        rep = list(particular)
        for idx, vec in enumerate(kernel):
            if bits >> idx & 1:
                rep = [(x + y) % 2 for x, y in zip(rep, vec)]
        # vectors rep + 2y with Q(rep + 2y) <= max_norm
        center = [Fraction(-c, 2) for c in rep]
        for y in enumerate_near(lat.gram, center, Fraction(max_norm, 4)):
            out.append(tuple(rep[i] + 2 * y[i] for i in range(r)))
    return sorted(set(out))


def isometric(l1: Lattice, l2: Lattice):
    """An integer matrix U with U^t G1 U = G2, or None.

    Columns of U are the images in l1 of l2's basis vectors, found by
    backtracking over short vectors of the right norms, candidates ordered
    by ascending norm and then lexicographically.
    """
    if l1.rank != l2.rank:
        return None
    if l1.discriminant() != l2.discriminant():
        return None
    r = l1.rank
    cap = max(
        max(l1.gram[i][i] for i in range(r)), max(l2.gram[i][i] for i in range(r))
    )
    if norm_histogram(l1, cap) != norm_histogram(l2, cap):
        return None
    pool = short_vectors(l1, cap)
    by_norm: dict[int, list[tuple[int, ...]]] = {}
    for v in pool:
        by_norm.setdefault(l1.norm(v), []).append(v)
    for vs in by_norm.values():
        vs.sort(key=lambda v: (l1.norm(v), v))
    images: list[tuple[int, ...]] = []

    def place(j: int) -> bool:
        if j == r:
            return True
        for cand in by_norm.get(l2.gram[j][j], []):
            if all(
                l1.pairing(cand, images[k]) == l2.gram[j][k] for k in range(j)
            ):
                images.append(cand)
                if place(j + 1):
                    return True
                images.pop()
        return False

    if not place(0):
        return None
    u = [[images[j][i] for j in range(r)] for i in range(r)]
    if abs(det_int(u)) != 1:
        return None
    return u


def _irreducibles_in_pool(lat: Lattice, pool) -> list[tuple[int, ...]]:
    by_norm = sorted(pool, key=lat.norm)
    out = []
    for v in pool:
        nv = lat.norm(v)
        reducible = False
        for x in by_norm:
            if lat.norm(x) >= nv:
                break
            y = tuple(int(a) - int(b) for a, b in zip(v, x))
            if any(y) and lat.pairing(x, y) >= 0:
                reducible = True
                break
        if not reducible:
            out.append(v)
    return out


def decompose(lat: Lattice) -> list[tuple[Lattice, list[list[int]]]]:
    """Split into orthogonal indecomposable summands.

    Works on an LLL-reduced copy: collects the irreducible vectors of norm
    up to the largest reduced diagonal entry, groups them by the transitive
    closure of non-orthogonality, and spans each group.  The bound is
    enlarged twice if the groups fail to generate; after that a
    DecompositionError is raised rather than guessing.

    Returns (summand, rows) pairs where rows give each summand basis vector
    in the coordinates of `lat`; summands are sorted by descending
    discriminant, then Gram matrix.
    """
    r = lat.rank
    g = np.array(lat.gram, dtype=object)
    t0, red = gram_lll(lat.gram)
    work = Lattice.from_rows(red)
    t0m = np.array(t0, dtype=object)
    maxd = max(red[i][i] for i in range(r))
    for cap in (maxd, maxd + 2, 2 * maxd + 2):
        pool = short_vectors(work, cap)
        irr = _irreducibles_in_pool(work, pool)
        if not irr:
            continue
        parent = list(range(len(irr)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(len(irr)):
            for j in range(i + 1, len(irr)):
                if work.pairing(irr[i], irr[j]) != 0:
                    pi, pj = find(i), find(j)
                    if pi != pj:
                        parent[pi] = pj
        groups: dict[int, list[tuple[int, ...]]] = {}
        for i, v in enumerate(irr):
            groups.setdefault(find(i), []).append(v)
        bases = [hnf_rows(vs) for vs in groups.values()]
        stacked = [row for rows in bases for row in rows]
        if len(stacked) != r or abs(det_int(stacked)) != 1:
            continue  # pool too small to generate; enlarge the bound
        out = []
        for rows in bases:
            b = np.array(rows, dtype=object) @ t0m  # back to ambient coords
            sub = (b @ g @ b.T).tolist()
            tr, sub_red = gram_lll(sub)
            rows_red = (np.array(tr, dtype=object) @ b).tolist()
            out.append(
                (
                    Lattice.from_rows(sub_red),
                    [[int(x) for x in row] for row in rows_red],
                )
            )
        out.sort(key=lambda pair: (-pair[0].discriminant(), pair[0].gram))
        return out
    raise DecompositionError(
        "irreducible vectors do not generate the lattice within the norm bound"
    )
