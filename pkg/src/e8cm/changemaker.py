"""E8-changemaker predicates, pairing profiles, enumeration, and the
loaded-pairings certification.

A candidate tau = (s, sigma) lives in E8 + Z^(n+1) with s in the E8 factor
and sigma a nonnegative nondecreasing integer tail.  Everything here works
with s through its dual coordinates s*_i = <e_i, s>, which are nonnegative
exactly when s lies in the fundamental Weyl chamber.  The tail condition
and the two covering conditions are stated over characteristic vectors of
the ambient lattice; the code keeps those as explicit finite sets of
achievable pairing values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import e8


class EnumerationCapError(Exception):
    """A changemaker tail exceeds the norm cap, so results would be partial."""

    def __init__(self, n, cap, offending):
        self.n = n
        self.cap = cap
        self.offending = offending
        super().__init__(
            f"changemaker tails for n={n} exceed the sigma norm cap {cap} "
            f"(first offender {offending}); raise the cap for a complete census"
        )


@dataclass(frozen=True)
class Tau:
    """A normalized candidate (s, sigma): s chamber-reduced, sigma sorted."""

    s: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        sig = tuple(int(x) for x in self.sigma)
        if any(x < 0 for x in sig):
            raise ValueError("sigma entries must be nonnegative")
        sig = tuple(sorted(sig))
        s_red, _ = e8.weyl_reduce(self.s)
        object.__setattr__(self, "s", s_red)
        object.__setattr__(self, "sigma", sig)

    @classmethod
    def from_dual(cls, s_star, sigma=()) -> "Tau":
        return cls(e8.vector_from_dual(s_star), sigma)

    @property
    def s_star(self) -> tuple[int, ...]:
        return e8.dual_coords(self.s)

    @property
    def n(self) -> int:
        return len(self.sigma) - 1

    @property
    def sigma_l1(self) -> int:
        return sum(self.sigma)

    @property
    def norm(self) -> int:
        return e8.norm(self.s) + sum(x * x for x in self.sigma)

    def is_zero(self) -> bool:
        return not any(self.s) and not any(self.sigma)

    def to_json(self) -> dict:
        return {"s_star": list(self.s_star), "sigma": list(self.sigma)}

    @classmethod
    def from_json(cls, obj) -> "Tau":
        return cls.from_dual(obj["s_star"], obj.get("sigma", ()))


def parity_interval(a: int, b: int) -> set[int]:
    """The set {a, a+2, ..., b}; a and b must agree mod 2."""
    if b < a:
        raise ValueError("parity interval needs b >= a")
    if (b - a) % 2:
        raise ValueError("parity interval endpoints must agree mod 2")
    return set(range(a, b + 1, 2))


def _validate_tail(sigma) -> tuple[int, ...]:
    sig = tuple(int(x) for x in sigma)
    if any(x < 0 for x in sig):
        raise ValueError("sigma entries must be nonnegative")
    if any(sig[i] > sig[i + 1] for i in range(len(sig) - 1)):
        raise ValueError("sigma must be sorted ascending")
    return sig


def is_changemaker(sigma) -> bool:
    """True when each entry is at most one more than the sum of the
    earlier ones; equivalently the signed subset sums fill a parity
    interval."""
    sig = _validate_tail(sigma)
    total = 0
    for x in sig:
        if x > 1 + total:
            return False
        total += x
    return True


def signed_subset_sums(values) -> set[int]:
    """All sums sum_i chi_i * values_i over sign choices chi in {-1,+1}."""
    sums = {0}
    for v in values:
        sums = {t + v for t in sums} | {t - v for t in sums}
    return sums


@dataclass(frozen=True)
class PairingProfile:
    """Achievable characteristic pairings at the two norm levels.

    short_set holds the tail pairings chi . sigma; Short_set additionally
    holds the next characteristic level: (2R, chi) for roots R, and tails
    with a single coefficient pushed to +-3.  c and C are the respective
    maxima."""

    c: int
    C: int
    short_set: frozenset[int]
    Short_set: frozenset[int]


def _b2_values(sigma) -> set[int]:
    out = set()
    for i, si in enumerate(sigma):
        rest = signed_subset_sums(sigma[:i] + sigma[i + 1 :])
        out |= {t + 3 * si for t in rest} | {t - 3 * si for t in rest}
    return out


def pairing_profile(t: Tau) -> PairingProfile:
    sums = signed_subset_sums(t.sigma)
    c = max(sums)
    s_star = t.s_star
    ds = {sum(a * b for a, b in zip(r, s_star)) for r in e8.POSITIVE_ROOTS}
    b1 = {2 * e * d + m for d in ds for e in (1, -1) for m in sums}
    b2 = _b2_values(t.sigma)
    big = b1 | b2
    return PairingProfile(
        c=c,
        C=max(big) if big else 0,
        short_set=frozenset(sums),
        Short_set=frozenset(sums) | frozenset(big),
    )


def is_e8_changemaker(t: Tau) -> bool:
    """Both covering conditions: the tail pairings fill PI(-c, c), and every
    value in PI(c+2, C) is achieved at the next characteristic level.  The
    second condition is vacuous when C < c + 2."""
    prof = pairing_profile(t)
    if prof.short_set != parity_interval(-prof.c, prof.c):
        return False
    if prof.C < prof.c + 2:
        return True
    return parity_interval(prof.c + 2, prof.C) <= prof.Short_set


_CLAUSE_SMALL = (1, 5, 6, 7, 8)


def satisfies_lemma_constraints(t: Tau) -> list[str]:
    """Violated clauses of the necessary combinatorial constraints, by label.

    With c = |sigma|_1 and B = c + 1: (1) s*_i <= B for i in {1,5,6,7,8};
    (2) s*_2 <= B or s*_3 <= B; (3a,3b) bounds on s*_2 when it exceeds B;
    (4a,4b) bounds on s*_3; (5) a bound on s*_4; (6a,6b) joint bounds when
    s*_2 and s*_4 both exceed B.  Empty list means all clauses hold.
    """
    s = t.s_star
    s1, s2, s3, s4, s5, s6, s7, s8 = s
    b = t.sigma_l1 + 1
    out = []
    if any(s[i - 1] > b for i in _CLAUSE_SMALL):
        out.append("1")
    if s2 > b and s3 > b:
        out.append("2")
    if s2 > b:
        if s2 > s3 + s4 + b:
            out.append("3a")
        if s2 > s5 + 2 * s6 + 2 * s7 + s8 + b:
            out.append("3b")
    if s3 > b:
        if s3 > s2 + b:
            out.append("4a")
        if s3 > s5 + s6 + s7 + s8 + b:
            out.append("4b")
    if s4 > b and s4 > s2 + s1 + s5 + s6 + s7 + s8 + b:
        out.append("5")
    if s2 > b and s4 > b:
        if s2 > s3 + b:
            out.append("6a")
        if s4 > s1 + s5 + s6 + s7 + s8 + b:
            out.append("6b")
    return out


# ---------------------------------------------------------------------------
# Enumeration


def changemaker_tails(n: int) -> list[tuple[int, ...]]:
    """All changemaker tails of length n+1, in ascending lexicographic
    order; finite since each entry is capped by one plus the prefix sum."""
    if n < -1:
        raise ValueError("n must be at least -1")
    out: list[tuple[int, ...]] = []

    def grow(prefix: list[int], total: int):
        if len(prefix) == n + 1:
            out.append(tuple(prefix))
            return
        lo = prefix[-1] if prefix else 0
        for v in range(lo, total + 2):
            prefix.append(v)
            grow(prefix, total + v)
            prefix.pop()

    grow([], 0)
    return out


def _cluster_masks():
    """Poset cuts used to prescreen candidates.

    For a direction i and level l, split the positive roots into the
    down-set {a_i < l} and its complementary up-set.  Root pairings are
    monotone on the chamber, so the up-set minimum is attained on its
    minimal elements and the down-set maximum on its maximal elements.  A
    candidate whose up-set minimum overshoots both the down-set maximum
    plus c+1 and the tail-plug threshold leaves an unpluggable covering
    gap, so the cut is a sound rejection test.
    """
    roots = e8.POSITIVE_ROOTS
    cuts = []
    for i, levels in ((2, (1, 2, 3)), (3, (1, 2, 3, 4)), (4, (1, 2))):
        for level in levels:
            upper = [r for r in roots if r[i - 1] >= level]
            lower = [r for r in roots if r[i - 1] < level]
            upper_min = [
                r for r in upper if not any(e8.root_leq(o, r) for o in upper if o != r)
            ]
            lower_max = [
                r for r in lower if not any(e8.root_leq(r, o) for o in lower if o != r)
            ]
            cuts.append((i, upper_min, lower_max))
    return cuts


_SMALL_IDX = (0, 4, 5, 6, 7)  # array columns of s*_1, s*_5..s*_8


def _split_root(r):
    mid = (r[1], r[2], r[3])
    small = tuple(r[i] for i in _SMALL_IDX)
    return mid, small


def _pareto_max(rows):
    return [
        r
        for r in rows
        if not any(o != r and e8.root_leq(r, o) for o in rows)
    ]


def _pair_blocks(i: int):
    """Chained value blocks for the two oversize directions i and 4.

    Splits the positive roots into blocks by their coordinate pair
    (a_i, a_4).  Within a block, every root walks down to a bottom root
    by steps in the remaining simple directions, so block pairings
    chain with steps of at most c+1 whenever the other six coordinates
    stay at most c+1; the block's value range is then an interval
    spanned by its minimal and maximal members.  Returns one
    (bottom roots, maximal roots) entry per block.
    """
    roots = e8.POSITIVE_ROOTS
    blocks: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for r in roots:
        blocks.setdefault((r[3], r[i - 1]), []).append(r)
    entries = []
    for key in sorted(blocks):
        members = blocks[key]
        bottoms = [
            r
            for r in members
            if not any(
                k not in (i - 1, 3) and r[k] and _step_down(r, k) in _ROOT_SET
                for k in range(8)
            )
        ]
        assert len(bottoms) == (6 if key == (0, 0) else 1)
        entries.append((bottoms, _pareto_max(members)))
    return entries


def _step_down(r, k):
    return tuple(v - (j == k) for j, v in enumerate(r))


_ROOT_SET = frozenset(e8.POSITIVE_ROOTS)


class _SigmaContext:
    """Per-tail constants and precomputed arrays for the candidate sweep."""

    def __init__(self, sigma: tuple[int, ...]):
        self.sigma = sigma
        self.c = sum(sigma)
        self.b = self.c + 1
        self.sig_max = sigma[-1] if sigma else 0
        self.s2_values = _b2_values(sigma)
        # largest tail-pluggable value and the up-set threshold it implies
        self.plug_top = self.c + 2 * self.sig_max
        self.m_thr = self.c + self.sig_max + 1
        b = self.b
        cols = np.arange(b + 1, dtype=np.int32)
        grid = np.meshgrid(cols, cols, cols, cols, cols, indexing="ij")
        # row layout: s*_1, s*_5, s*_6, s*_7, s*_8
        self.small = np.stack([g.ravel() for g in grid], axis=1)
        s1, s5, s6, s7, s8 = (self.small[:, k] for k in range(5))
        self.q3b = s5 + 2 * s6 + 2 * s7 + s8
        self.q4b = s5 + s6 + s7 + s8
        self.q15 = s1 + s5 + s6 + s7 + s8
        self.cuts = []
        for direction, upper_min, lower_max in _cluster_masks():
            ups = []
            for r in upper_min:
                mid, small = _split_root(r)
                proj = self.small @ np.array(small, dtype=np.int32)
                ups.append((mid, proj, int(proj.max())))
            lows = []
            for r in lower_max:
                mid, small = _split_root(r)
                proj = self.small @ np.array(small, dtype=np.int32)
                lows.append((mid, proj, int(proj.max()), int(proj.min())))
            self.cuts.append((direction, ups, lows))
        self.pair_blocks = {}
        for i in (2, 3):
            entries = []
            for bottoms, tops in _pair_blocks(i):
                entries.append(
                    (
                        [
                            (m, self.small @ np.array(sm, dtype=np.int32))
                            for m, sm in map(_split_root, bottoms)
                        ],
                        [
                            (m, self.small @ np.array(sm, dtype=np.int32))
                            for m, sm in map(_split_root, tops)
                        ],
                    )
                )
            self.pair_blocks[i] = entries
        theta = e8.HIGHEST_ROOT
        self.theta_mid = (theta[1], theta[2], theta[3])
        self.theta_small = self.small @ np.array(
            [theta[i] for i in _SMALL_IDX], dtype=np.int32
        )


def _full_rows(small_rows: np.ndarray, s2: int, s3: int, s4: int) -> np.ndarray:
    full = np.empty((len(small_rows), 8), dtype=np.int32)
    full[:, 0] = small_rows[:, 0]
    full[:, 1] = s2
    full[:, 2] = s3
    full[:, 3] = s4
    full[:, 4:8] = small_rows[:, 1:5]
    return full


def _sweep_sigma(ctx: _SigmaContext, keep_rows: bool = True):
    """Sweep the clause box and yield (easy, hard) chunks.

    easy covers rows proven acceptable on the spot: all coordinates at
    most c+1 and the highest-root pairing at least the top tail entry
    (see _gap_mask for why that suffices).  It is an int32 row array
    when keep_rows is set, otherwise just the tally.  hard is the array
    of surviving rows that still need the sorted gap test.
    """
    b = ctx.b
    small = ctx.small
    easy_batch: list[np.ndarray] = []
    easy_total = 0
    hard_batch: list[np.ndarray] = []
    pending = 0

    def flush():
        nonlocal easy_batch, easy_total, hard_batch, pending
        if keep_rows:
            easy = (
                np.concatenate(easy_batch)
                if easy_batch
                else np.empty((0, 8), dtype=np.int32)
            )
        else:
            easy = easy_total
        hard = (
            np.concatenate(hard_batch)
            if hard_batch
            else np.empty((0, 8), dtype=np.int32)
        )
        easy_batch, easy_total, hard_batch, pending = [], 0, [], 0
        return easy, hard

    for s4 in range(7 * b + 1):
        for s2 in range(3 * b + 1):
            for s3 in range(2 * b + 1):
                if s2 > b and s3 > b:
                    continue
                if s2 > b and s2 > s3 + s4 + b:
                    continue
                if s3 > b and s3 > s2 + b:
                    continue
                if s2 > b and s4 > b and s2 > s3 + b:
                    continue
                big_dirs = [
                    d for d, v in ((2, s2), (3, s3), (4, s4)) if v > b
                ]
                # scalar bounds decide most cuts without touching arrays:
                # the up-set minimum lies in [up_lo, up_hi], the down-set
                # maximum in [low_lo, low_hi]
                dead = False
                vector_cuts = []
                for direction, ups, lows in ctx.cuts:
                    boundary = len(big_dirs) == 1 and direction == big_dirs[0]
                    up_lo = min(
                        m[0] * s2 + m[1] * s3 + m[2] * s4 for m, _, _ in ups
                    )
                    up_hi = min(
                        m[0] * s2 + m[1] * s3 + m[2] * s4 + pmax
                        for m, _, pmax in ups
                    )
                    if not boundary and up_hi <= ctx.m_thr:
                        continue
                    low_lo = max(
                        m[0] * s2 + m[1] * s3 + m[2] * s4
                        for m, _, _, _ in lows
                    )
                    low_hi = max(
                        m[0] * s2 + m[1] * s3 + m[2] * s4 + pmax
                        for m, _, pmax, _ in lows
                    )
                    if up_hi <= low_lo + b:
                        continue
                    if up_lo > ctx.m_thr and up_lo > low_hi + b:
                        dead = True
                        break
                    vector_cuts.append((boundary, ups, lows))
                if dead:
                    continue
                active = np.ones(len(small), dtype=bool)
                if s2 > b:
                    active &= s2 <= ctx.q3b + b
                if s3 > b:
                    active &= s3 <= ctx.q4b + b
                if s4 > b:
                    active &= s4 <= s2 + ctx.q15 + b
                    if s2 > b:
                        active &= s4 <= ctx.q15 + b
                if not active.any():
                    continue
                # chained holds where every level of the one oversize
                # direction starts within c+1 of the blocks below it,
                # making the covering chain exact for those rows
                chained = None
                for boundary, ups, lows in vector_cuts:
                    m_vec = None
                    for m, proj, _ in ups:
                        v = proj + (m[0] * s2 + m[1] * s3 + m[2] * s4)
                        m_vec = v if m_vec is None else np.minimum(m_vec, v)
                    big_vec = None
                    for m, proj, _, _ in lows:
                        v = proj + (m[0] * s2 + m[1] * s3 + m[2] * s4)
                        big_vec = v if big_vec is None else np.maximum(big_vec, v)
                    ok = m_vec <= big_vec + b
                    if boundary:
                        chained = ok if chained is None else (chained & ok)
                    kill = (m_vec > ctx.m_thr) & ~ok
                    if kill.any():
                        active &= ~kill
                        if not active.any():
                            break
                if not active.any():
                    continue
                theta_need = ctx.sig_max - (
                    ctx.theta_mid[0] * s2
                    + ctx.theta_mid[1] * s3
                    + ctx.theta_mid[2] * s4
                )
                if len(big_dirs) == 0:
                    easy_sel = active & (ctx.theta_small >= theta_need)
                elif len(big_dirs) == 1:
                    easy_sel = active & (ctx.theta_small >= theta_need)
                    if chained is not None:
                        easy_sel &= chained
                elif big_dirs[-1] == 4:
                    # merge the per-block value intervals in min order;
                    # the union is fully chained when each interval
                    # starts within c+1 of the running maximum
                    blocks = ctx.pair_blocks[big_dirs[0]]
                    mins = np.empty((len(small), len(blocks)), dtype=np.int32)
                    maxs = np.empty_like(mins)
                    for k, (bottoms, tops) in enumerate(blocks):
                        v = None
                        for m, proj in bottoms:
                            f = proj + (m[0] * s2 + m[1] * s3 + m[2] * s4)
                            v = f if v is None else np.minimum(v, f)
                        mins[:, k] = v
                        v = None
                        for m, proj in tops:
                            f = proj + (m[0] * s2 + m[1] * s3 + m[2] * s4)
                            v = f if v is None else np.maximum(v, f)
                        maxs[:, k] = v
                    order = np.argsort(mins, axis=1, kind="stable")
                    mins = np.take_along_axis(mins, order, axis=1)
                    maxs = np.take_along_axis(maxs, order, axis=1)
                    run = np.maximum.accumulate(maxs, axis=1)
                    merged = (mins[:, 0] <= b) & (
                        mins[:, 1:] <= run[:, :-1] + b
                    ).all(axis=1)
                    easy_sel = active & (ctx.theta_small >= theta_need) & merged
                else:
                    easy_sel = None
                if easy_sel is not None:
                    n_easy = int(easy_sel.sum())
                    if n_easy:
                        if keep_rows:
                            easy_batch.append(
                                _full_rows(small[easy_sel], s2, s3, s4)
                            )
                            pending += n_easy
                        else:
                            easy_total += n_easy
                        active &= ~easy_sel
                if active.any():
                    hard = _full_rows(small[active], s2, s3, s4)
                    hard_batch.append(hard)
                    pending += len(hard)
                if pending >= 1 << 17:
                    yield flush()
    yield flush()


_ROOTS_MAT = np.array(e8.POSITIVE_ROOTS, dtype=np.float32)
_THETA = np.array(e8.HIGHEST_ROOT, dtype=np.int32)


def _gap_mask(ctx: _SigmaContext, rows: np.ndarray) -> np.ndarray:
    """Exact acceptance mask for a batch of candidate s* rows.

    A row with every coordinate at most c+1 climbs the root poset in
    pairing steps of at most c+1, so its doubled pairings chain with
    gaps at most 2c+2; if the largest tail plug also sits below the
    highest-root pairing the row is accepted with no further work.
    The rest get the sorted gap test: gaps at most 2c+2 and a covered
    top accept a row, a value stranded above the largest plug rejects
    it, and the sliver in between gets the precise set walk.
    """
    c = ctx.c
    mask = np.zeros(len(rows), dtype=bool)
    if not len(rows):
        return mask
    highest = rows @ _THETA
    easy = (rows <= ctx.b).all(axis=1) & (ctx.sig_max <= highest)
    mask[easy] = True
    rest = np.nonzero(~easy)[0]
    if not len(rest):
        return mask
    sub = rows[rest]
    pair = sub.astype(np.float32) @ _ROOTS_MAT.T
    doubled = (2 * pair).astype(np.int32)
    doubled.sort(axis=1)
    padded = np.concatenate(
        [np.zeros((len(sub), 1), dtype=np.int32), doubled], axis=1
    )
    gaps = np.diff(padded, axis=1)
    stranded = gaps > 2 * c + 2
    top = doubled[:, -1]
    bad = stranded.any(axis=1) | (ctx.plug_top > top + c)
    reject = (stranded & (padded[:, 1:] - c - 2 > ctx.plug_top)).any(axis=1)
    mask[rest[~bad]] = True
    for k in np.nonzero(bad & ~reject)[0]:
        s_star = tuple(int(x) for x in sub[k])
        if _covered_exact(ctx, s_star):
            mask[rest[k]] = True
    return mask


def _accepted_row_arrays(ctx: _SigmaContext):
    for easy_rows, hard in _sweep_sigma(ctx, keep_rows=True):
        m = _gap_mask(ctx, hard)
        chunk = np.concatenate([easy_rows, hard[m]])
        if len(chunk):
            yield chunk


def _accepted_count(ctx: _SigmaContext) -> int:
    total = 0
    for easy_n, hard in _sweep_sigma(ctx, keep_rows=False):
        total += easy_n + int(_gap_mask(ctx, hard).sum())
    return total


def _covered_exact(ctx: _SigmaContext, s_star) -> bool:
    """Walk the merged cover intervals and test every stranded value.

    Each doubled pairing 2d covers [2d-c, 2d+c]; values between one
    interval's reach and the next interval's start, and values between
    the last reach and the largest tail plug, must all be tail plugs.
    """
    c = ctx.c
    es = sorted(
        {2 * sum(a * b for a, b in zip(r, s_star)) for r in e8.POSITIVE_ROOTS}
    )
    reach = c
    for e in es:
        for v in range(reach + 2, e - c, 2):
            if v not in ctx.s2_values:
                return False
        reach = max(reach, e + c)
    for v in range(reach + 2, ctx.plug_top + 1, 2):
        if v not in ctx.s2_values:
            return False
    return True


def _census_tails(n: int, sigma_filter, sigma_norm_cap: int):
    if n > 6:
        raise ValueError("enumeration is sized for n <= 6")
    tails = changemaker_tails(n)
    for sig in tails:
        if sum(x * x for x in sig) > sigma_norm_cap:
            raise EnumerationCapError(n, sigma_norm_cap, sig)
    if sigma_filter is not None:
        if callable(sigma_filter):
            tails = [t for t in tails if sigma_filter(t)]
        else:
            want = tuple(sigma_filter)
            tails = [t for t in tails if t == want]
    return tails


def enumerate_e8_changemakers(
    n: int, sigma_filter=None, sigma_norm_cap: int = 2000
) -> list[Tau]:
    """All nonzero E8-changemakers with a length-(n+1) tail.

    Tails run over every changemaker sequence of that length, the chamber
    part over the box carved out by the necessary constraints; candidates
    then face the exact covering test.  sigma_filter restricts the tails:
    a tuple demands an exact match, a callable is used as a predicate.
    Results are sorted by (sigma, s*) and every one is re-verified with
    is_e8_changemaker.

    The census grows quickly with n (tens of millions of members by
    n=2); use count_e8_changemakers when only the tally is needed.

    Raises EnumerationCapError when some tail norm exceeds sigma_norm_cap,
    since the census would otherwise be silently incomplete.
    """
    results: list[Tau] = []
    for sig in _census_tails(n, sigma_filter, sigma_norm_cap):
        ctx = _SigmaContext(sig)
        seen: list[tuple[int, ...]] = []
        for rows in _accepted_row_arrays(ctx):
            seen.extend(map(tuple, rows.tolist()))
        seen.sort()
        for s_star in seen:
            t = Tau.from_dual(s_star, sig)
            if t.is_zero():
                continue
            if not is_e8_changemaker(t):
                raise AssertionError(
                    f"pipeline accepted a non-changemaker: {s_star}, {sig}"
                )
            results.append(t)
    return results


def count_e8_changemakers(
    n: int, sigma_filter=None, sigma_norm_cap: int = 2000
) -> int:
    """Number of nonzero E8-changemakers with a length-(n+1) tail.

    Same sweep and acceptance as enumerate_e8_changemakers, tallied
    without materializing Tau objects.
    """
    total = 0
    for sig in _census_tails(n, sigma_filter, sigma_norm_cap):
        total += _accepted_count(_SigmaContext(sig))
        if not any(sig):
            # the zero candidate is always accepted; drop it once
            total -= 1
    return total


_GRAM_INV_MAT = np.array(e8.GRAM_INV, dtype=np.float32)


def max_norm_small_n() -> tuple[int, Tau]:
    """The largest norm among E8-changemakers with n in {-1, 0, 1}, with a
    witness."""
    best = -1
    best_row: tuple[int, ...] = ()
    best_sig: tuple[int, ...] = ()
    for n in (-1, 0, 1):
        for sig in _census_tails(n, None, 2000):
            ctx = _SigmaContext(sig)
            base = sum(x * x for x in sig)
            for rows in _accepted_row_arrays(ctx):
                f = rows.astype(np.float32)
                norms = ((f @ _GRAM_INV_MAT) * f).sum(axis=1) + base
                k = int(norms.argmax())
                if norms[k] > best:
                    best = int(norms[k])
                    best_row = tuple(int(x) for x in rows[k])
                    best_sig = sig
    t = Tau.from_dual(best_row, best_sig)
    if not is_e8_changemaker(t):
        raise AssertionError(f"max-norm witness fails: {best_row}, {best_sig}")
    return best, t


# ---------------------------------------------------------------------------
# Loaded pairings


def _unit(i: int) -> tuple[int, ...]:
    return tuple(int(k == i - 1) for k in range(8))


def _addv(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _loaded_shapes() -> list[tuple[int, tuple[int, ...]]]:
    """Every (j, r) with w_j|_E8 = -e_j + r reachable by the extension-set
    recipes for a loaded index j in {2, 3, 4}."""
    shapes = [
        (2, _unit(4)),
        (2, _unit(3)),
        (2, _addv(_unit(3), _unit(4))),
        (3, _unit(2)),
    ]
    chain = (1, 5, 6, 7, 8)
    for lead in (True, False):
        acc = _unit(2) if lead else (0,) * 8
        if lead:
            shapes.append((4, acc))
        for i in chain:
            acc = _addv(acc, _unit(i))
            shapes.append((4, acc))
    roots = set(e8.POSITIVE_ROOTS)
    for j, r in shapes:
        assert r in roots
        w = tuple(b - a for a, b in zip(_unit(j), r))
        assert e8.norm(w) == 4
    return shapes


def _lp_feasible(ineqs: list[tuple[tuple[int, ...], int]]) -> bool:
    """Rational feasibility of a system of inequalities sum(a_i x_i) + k >= 0
    over nonnegative variables.

    Pins variables that the system forces to zero, drops rows nonnegativity
    already satisfies, then runs phase-1 simplex over exact fractions with
    Bland's rule, so the answer is certified and the iteration cannot cycle.
    Artificial columns are introduced only for rows the origin violates.
    """
    from fractions import Fraction

    nv = len(ineqs[0][0])
    raw = list(dict.fromkeys(ineqs))
    pinned = [False] * nv
    while True:
        new = []
        for a, k in raw:
            if k > 0 or any(a[i] > 0 and not pinned[i] for i in range(nv)):
                continue
            if k < 0:
                return False
            new.extend(i for i in range(nv) if a[i] < 0 and not pinned[i])
        if not new:
            break
        for i in new:
            pinned[i] = True
    keep = [i for i in range(nv) if not pinned[i]]
    rows = []
    for a, k in raw:
        aa = [a[i] for i in keep]
        if k >= 0 and all(x >= 0 for x in aa):
            continue
        rows.append((aa, k))
    viol = [i for i, (_, k) in enumerate(rows) if k < 0]
    if not viol:
        return True
    nk = len(keep)
    m = len(rows)
    width = nk + m + len(viol)
    tab = []
    basis = []
    art = iter(range(nk + m, width))
    for i, (aa, k) in enumerate(rows):
        coef = [Fraction(x) for x in aa] + [Fraction(0)] * (width - nk)
        if k >= 0:
            # satisfied at the origin: slack basic
            coef = [-c for c in coef]
            coef[nk + i] = Fraction(1)
            basis.append(nk + i)
            rhs = Fraction(k)
        else:
            coef[nk + i] = Fraction(-1)
            col = next(art)
            coef[col] = Fraction(1)
            basis.append(col)
            rhs = Fraction(-k)
        tab.append(coef + [rhs])
    # price out the basic artificials: minimize their sum
    cost = [Fraction(0)] * (width + 1)
    for i in viol:
        cost[basis[i]] += 1
        for j in range(width + 1):
            cost[j] -= tab[i][j]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        ratio = None
        for i in range(m):
            if tab[i][enter] > 0:
                r = tab[i][width] / tab[i][enter]
                if (
                    ratio is None
                    or r < ratio
                    or (r == ratio and basis[i] < basis[leave])
                ):
                    ratio, leave = r, i
        if leave is None:
            raise ArithmeticError("phase-1 objective is bounded below")
        piv = tab[leave][enter]
        tab[leave] = [c / piv for c in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [c - f * d for c, d in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [c - f * d for c, d in zip(cost, tab[leave])]
        basis[leave] = enter
    return cost[width] == 0


def _cone_row(coeffs: dict[int, int], c_coeff: int = 0, const: int = 0):
    """An inequality sum(coeffs_i s*_i) + c_coeff*c + const >= 0, keyed by
    the one-based dual-coordinate index."""
    a = [0] * 9
    for i, v in coeffs.items():
        a[i - 1] = v
    a[8] = c_coeff
    return tuple(a), const


def _loaded_cone(j: int) -> list[tuple[tuple[int, ...], int]]:
    """Constraints valid for every E8-changemaker whose index j is loaded,
    as inequalities in the variables (s*_1..s*_8, c)."""
    cone = [_cone_row({i: 1}) for i in range(1, 9)]  # s* >= 0
    cone.append(_cone_row({}, 1))  # c >= 0
    cone.append(_cone_row({j: 1}, -1, -2))  # loaded: s*_j >= c + 2
    for i in _CLAUSE_SMALL:
        cone.append(_cone_row({i: -1}, 1, 1))  # s*_i <= c + 1
    if j == 2:
        cone.append(_cone_row({3: -1}, 1, 1))
        cone.append(_cone_row({2: -1, 3: 1, 4: 1}, 1, 1))
        cone.append(_cone_row({2: -1, 5: 1, 6: 2, 7: 2, 8: 1}, 1, 1))
    elif j == 3:
        cone.append(_cone_row({2: -1}, 1, 1))
        cone.append(_cone_row({3: -1, 2: 1}, 1, 1))
        cone.append(_cone_row({3: -1, 5: 1, 6: 1, 7: 1, 8: 1}, 1, 1))
    elif j == 4:
        cone.append(_cone_row({4: -1, 2: 1, 1: 1, 5: 1, 6: 1, 7: 1, 8: 1}, 1, 1))
    return cone


_W4_CHAIN = (1, 5, 6, 7, 8)


def _shape_branches(j: int, r) -> list[list[tuple[tuple[int, ...], int]]]:
    """Constraint branches under which the recipe yields the shape -e_j + r.

    Each branch is a list of inequality rows; together the branches cover
    every loaded changemaker whose extension vector has this shape.  For
    j in {2, 3} the branches transcribe the recipe's case conditions.  For
    j = 4 they replay the iterative construction: a step that added e_m
    did so because some remaining coordinate could grow the running
    pairing without overshooting zero, and a step that stopped the chain
    found no such coordinate, so each step contributes the corresponding
    disjunction and the branches are the products of its choices.
    """
    if j == 2:
        if r == _unit(4):
            return [[_cone_row({3: -1})]]
        if r == _unit(3):
            common = [_cone_row({3: 1}, 0, -1)]
            return [
                common + [_cone_row({4: -1})],
                common + [_cone_row({2: -1, 3: 1, 4: 1}, 0, -1)],
            ]
        assert r == _addv(_unit(3), _unit(4))
        return [
            [
                _cone_row({3: 1}, 0, -1),
                _cone_row({4: 1}, 0, -1),
                _cone_row({2: 1, 3: -1, 4: -1}),
            ]
        ]
    if j == 3:
        assert r == _unit(2)
        return [
            [
                _cone_row({2: -1, 3: 1}, 0, -1),
                _cone_row({2: 1, 3: -1}, 1, 1),
            ]
        ]
    assert j == 4
    lead = r[1] >= 1
    present = [m for m in _W4_CHAIN if r[m - 1] >= 1]
    branches: list[list[tuple[tuple[int, ...], int]]] = [[]]

    def across(options):
        return [br + opt for br in branches for opt in options]

    if lead:
        branches = across(
            [[_cone_row({2: 1}, 0, -1), _cone_row({2: -1}, 1, 1)]]
        )
    else:
        both_big = [
            _cone_row({2: 1}, -1, -2),
            # necessary constraints when indices 2 and 4 are both oversize
            _cone_row({2: -1, 3: 1, 4: 1}, 1, 1),
            _cone_row({2: -1, 5: 1, 6: 2, 7: 2, 8: 1}, 1, 1),
            _cone_row({2: -1, 3: 1}, 1, 1),
            _cone_row({4: -1, 1: 1, 5: 1, 6: 1, 7: 1, 8: 1}, 1, 1),
        ]
        branches = across([[_cone_row({2: -1})], both_big])
    pairing = {4: -1}
    if lead:
        pairing[2] = 1

    def plus(var):
        out = dict(pairing)
        out[var] = out.get(var, 0) + 1
        return out

    added_any = lead
    for idx, m in enumerate(_W4_CHAIN):
        witnesses = _W4_CHAIN[idx:] if added_any else (m,)
        if r[m - 1]:
            # the step added e_m: some witness could grow the pairing
            # while keeping it nonpositive
            branches = across(
                [
                    [
                        _cone_row({w: 1}, 0, -1),
                        _cone_row({k: -v for k, v in plus(w).items()}),
                    ]
                    for w in witnesses
                ]
            )
            pairing = plus(m)
            added_any = True
        else:
            # the chain stopped here: no witness worked
            assert not any(r[k - 1] for k in _W4_CHAIN[idx:])
            for w in witnesses:
                branches = across(
                    [
                        [_cone_row({w: -1})],
                        [_cone_row(plus(w), 0, -1)],
                    ]
                )
            break
    return branches


def _negation_rows(j, r, z, clause):
    """Rows asserting the negated conclusion of a loaded-pairings clause."""
    a = tuple(z)
    bvec = tuple(zc + rc - ec for zc, rc, ec in zip(z, r, _unit(j)))

    def lin(coeffs, c_coeff=0, const=0):
        return tuple(coeffs) + (c_coeff,), const

    if clause == 1:
        # conclusion <z, tau> > c+1
        return [lin([-x for x in a], 1, 1)]
    if clause == 2:
        # conclusion <z,tau> = 0 or <z,tau> > c+1 or <b,tau> > 0
        return [
            lin(a, 0, -1),  # <a,s*> >= 1 (z positive root, so >= 0 always)
            lin([-x for x in a], 1, 1),  # <a,s*> <= c+1
            lin([-x for x in bvec], 0, 0),  # <b,s*> <= 0
        ]
    # clause 3: <z,tau> <= 0 or <z,tau> > c+1 or
    # (<b,tau> = 0 and |-e_j+r+z| = 2) or <b,tau> > 0
    drop_allows_zero = e8.norm(bvec) == 2
    third = lin([-x for x in bvec], 0, -1) if drop_allows_zero else lin(
        [-x for x in bvec], 0, 0
    )
    return [
        lin(a, 0, -1),  # <a,s*> >= 1
        lin([-x for x in a], 1, 1),  # <a,s*> <= c+1
        third,
    ]


def _quick_infeasible(rows) -> bool:
    """Cheap certificate of infeasibility by interval propagation.

    Maintains lower and upper bounds per nonnegative variable and
    tightens them through each row; a row whose maximum possible value
    is still negative refutes the system.  Inconclusive returns False.
    """
    nv = 9
    lo = [0] * nv
    hi: list[int | None] = [None] * nv
    for _ in range(12):
        changed = False
        for a, k in rows:
            slack_known = True
            best = k
            for i in range(nv):
                if a[i] > 0:
                    if hi[i] is None:
                        slack_known = False
                        break
                    best += a[i] * hi[i]
                elif a[i] < 0:
                    best += a[i] * lo[i]
            if slack_known and best < 0:
                return True
            for i in range(nv):
                if not a[i]:
                    continue
                rest = k
                ok = True
                for t in range(nv):
                    if t == i or not a[t]:
                        continue
                    if a[t] > 0:
                        if hi[t] is None:
                            ok = False
                            break
                        rest += a[t] * hi[t]
                    else:
                        rest += a[t] * lo[t]
                if not ok:
                    continue
                # a[i] x_i + rest >= 0 at the loosest other values
                if a[i] > 0:
                    if rest < 0:
                        bound = -(rest // a[i])
                        if bound > lo[i]:
                            lo[i] = bound
                            changed = True
                else:
                    bound = rest // -a[i]
                    if bound < 0:
                        return True
                    if hi[i] is None or bound < hi[i]:
                        hi[i] = bound
                        changed = True
                if hi[i] is not None and lo[i] > hi[i]:
                    return True
        if not changed:
            break
    return False


def check_loaded_pairings() -> list[dict]:
    """Certify the three loaded-pairings clauses for every recipe shape.

    For each loaded shape (j, r), each branch of recipe conditions that
    produces it, and each z meeting a clause's pairing hypothesis, the
    clause's conclusion must hold for every loaded changemaker in the
    branch; this is checked by refuting the negated conclusion over the
    branch's constraint cone.  Returns the uncertified cases, expected
    empty.
    """
    from .lattice import Lattice, short_vectors

    shapes = _loaded_shapes()
    e8_lat = Lattice.from_rows(e8.GRAM)
    norm4 = [v for v in short_vectors(e8_lat, 4) if e8.norm(v) == 4]
    violations = []
    for j, r in shapes:
        target = tuple(rc - ec for rc, ec in zip(r, _unit(j)))
        cone = _loaded_cone(j)
        branches = _shape_branches(j, r)
        for clause, pool, need in (
            (1, e8.POSITIVE_ROOTS, -2),
            (2, e8.POSITIVE_ROOTS, -1),
            (3, norm4, -3),
        ):
            for z in pool:
                if e8.pairing(target, z) != need:
                    continue
                base = cone + _negation_rows(j, r, z, clause)
                if _quick_infeasible(base) or not _lp_feasible(base):
                    continue
                for branch in branches:
                    system = base + branch
                    if _quick_infeasible(system):
                        continue
                    if _lp_feasible(system):
                        violations.append(
                            {"j": j, "r": r, "z": tuple(z), "clause": clause}
                        )
                        break
    return violations
