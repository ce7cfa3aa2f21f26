"""Suffix array construction (DC3 and a brute-force oracle) plus LCP arrays.

The DC3 / skew algorithm sorts the suffixes starting at positions i with
i mod 3 != 0 (the difference-cover sample) by radix-sorting their leading
character triples, recursing on the triple names when they collide. The
remaining suffixes are sorted by (first character, rank of next suffix),
and the two sorted sequences are merged with constant-time comparisons.

Conventions used throughout:
  - text ranks are 1..sigma; 0 is the virtual padding that extends the
    text so every triple is defined ("C00"-style tail triples),
  - when n mod 3 == 1 an extra sample position n (all padding) is
    included so the mod-1 triple block is complete; it is dropped from
    the final suffix array,
  - public rank arrays are 0-based; sample ranks are 1-based.

Construction runs in two flavors sharing one recursion skeleton: the
serial path (sort_by_keys=None) uses packed keys, counting passes, and a
two-finger merge, JIT-compiled when numba is importable; a caller may
instead supply its own stable multi-key sorter, which is how the
parallel engine routes every sorting pass through its radix kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .sequence import RankedText

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the fallback tests
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


# Stable lexicographic argsort: keys given major first.
SortByKeys = Callable[..., np.ndarray]

_PACK_BITS = 63  # packed composite keys must stay within a signed 64-bit lane


def _key_width(key: np.ndarray) -> int:
    return max(1, int(key.max()).bit_length()) if len(key) else 1


def _pack_keys(keys: tuple[np.ndarray, ...]) -> np.ndarray | None:
    """Fold multiple keys into one integer key, or None if over 63 bits."""
    widths = [_key_width(k) for k in keys]
    total = sum(widths)
    if total > _PACK_BITS:
        return None
    dtype = np.int32 if total <= 31 else np.int64
    packed = np.zeros(len(keys[0]), dtype=dtype)
    for key, width in zip(keys, widths):
        packed = (packed << width) | key.astype(dtype)
    return packed


def _lexsort_keys(*keys: np.ndarray) -> np.ndarray:
    """Multi-key argsort for texts too wide to pack, and for callers that
    want a plain numpy sorter."""
    if len(keys) == 1:
        return np.argsort(keys[0], kind="stable")
    packed = _pack_keys(keys)
    if packed is None:
        return np.lexsort(keys[::-1])
    # introsort: no DC3 step depends on order within equal keys (equal
    # triples get equal names and recursion fixes their order; all other
    # key tuples are injective)
    return np.argsort(packed)


@dataclass(frozen=True, eq=False)
class SuffixArray:
    """Suffix start positions in lexicographic order and the inverse map."""

    n: int
    sa: np.ndarray
    rank: np.ndarray

    def __post_init__(self):
        self.sa.flags.writeable = False
        self.rank.flags.writeable = False

    @classmethod
    def from_order(cls, order: np.ndarray) -> "SuffixArray":
        order = np.asarray(order, dtype=np.int64)
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order), dtype=np.int64)
        return cls(n=len(order), sa=order, rank=rank)


@dataclass(frozen=True, eq=False)
class LcpArray:
    """lcp[i] = longest common prefix of suffixes sa[i-1], sa[i]; lcp[0] = 0."""

    lcp: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.lcp, dtype=np.int64)
        arr.flags.writeable = False
        object.__setattr__(self, "lcp", arr)

    def __len__(self) -> int:
        return len(self.lcp)


@dataclass
class Dc3Workspace:
    """Intermediate state of one top-level DC3 pass, exposed for testing.

    mod1/mod2 are the sample positions (mod-1 block includes the padding
    position n when n mod 3 == 1); triple_text is the string of triple
    names, mod-1 block then mod-2 block, that recursion would run on.
    sample_rank[p] is the 1-based rank of sample suffix p (0 elsewhere).
    """

    mod1: np.ndarray
    mod2: np.ndarray
    nonsample: np.ndarray
    triple_text: np.ndarray
    sample_rank: np.ndarray
    sorted_samples: np.ndarray
    sorted_nonsamples: np.ndarray
    depth: int

    @property
    def sample_positions(self) -> np.ndarray:
        return np.concatenate([self.mod1, self.mod2])


def _padded(text_ranks: np.ndarray, n: int) -> np.ndarray:
    tp = np.zeros(n + 3, dtype=np.int32)
    tp[:n] = text_ranks
    return tp


def _sample_positions(n: int) -> tuple[np.ndarray, np.ndarray]:
    limit = n + 1 if n % 3 == 1 else n
    mod1 = np.arange(1, limit, 3, dtype=np.int32)
    mod2 = np.arange(2, limit, 3, dtype=np.int32)
    return mod1, mod2


@njit(cache=True)
def _counting_reorder(keys, order, key_bound):  # pragma: no cover - jitted
    """One stable counting-sort pass: reorder `order` by keys[order]."""
    counts = np.zeros(key_bound + 2, dtype=np.int64)
    n = order.shape[0]
    for i in range(n):
        counts[keys[order[i]] + 1] += 1
    for v in range(1, key_bound + 2):
        counts[v] += counts[v - 1]
    out = np.empty_like(order)
    for i in range(n):
        k = keys[order[i]]
        out[counts[k]] = order[i]
        counts[k] += 1
    return out


@njit(cache=True)
def _merge_walk(tp, rank_of, samples, nonsamples):  # pragma: no cover - jitted
    """Two-finger merge of the sorted sample and nonsample sequences.

    Cross comparisons follow the class of the sample position: mod-1
    compares (char, rank of next suffix), mod-2 compares (char, char,
    rank of next-next), so both sides land on ranked sample positions.
    """
    m = samples.shape[0]
    k = nonsamples.shape[0]
    sa = np.empty(m + k, dtype=np.int32)
    i = 0
    j = 0
    w = 0
    while i < m and j < k:
        a = samples[i]
        b = nonsamples[j]
        ca = tp[a]
        cb = tp[b]
        if ca != cb:
            a_first = ca < cb
        elif a % 3 == 1:
            a_first = rank_of[a + 1] < rank_of[b + 1]
        else:
            ca2 = tp[a + 1]
            cb2 = tp[b + 1]
            if ca2 != cb2:
                a_first = ca2 < cb2
            else:
                a_first = rank_of[a + 2] < rank_of[b + 2]
        if a_first:
            sa[w] = a
            i += 1
        else:
            sa[w] = b
            j += 1
        w += 1
    while i < m:
        sa[w] = samples[i]
        i += 1
        w += 1
    while j < k:
        sa[w] = nonsamples[j]
        j += 1
        w += 1
    return sa


def _name_triples(tp, mod1, mod2, sort_by_keys):
    """Radix-sort sample triples and name them; returns the recursion string."""
    s12 = np.concatenate([mod1, mod2])
    keys = (tp[s12], tp[s12 + 1], tp[s12 + 2])
    packed = None
    if sort_by_keys is None:
        packed = _pack_keys(keys)
        if packed is None:
            perm = np.lexsort(keys[::-1])
        elif _HAVE_NUMBA and packed.itemsize == 4 and int(packed.max()) < 65536:
            # small alphabets: one streaming counting pass beats introsort
            perm = _counting_reorder(packed,
                                     np.arange(len(s12), dtype=np.int32),
                                     int(packed.max()))
        else:
            perm = np.argsort(packed)
    else:
        perm = sort_by_keys(*keys)
    sorted12 = s12[perm]
    fresh = np.empty(len(s12), dtype=np.bool_)
    fresh[0] = True
    if packed is not None:
        spk = packed[perm]
        fresh[1:] = spk[1:] != spk[:-1]
    else:
        c0, c1, c2 = tp[sorted12], tp[sorted12 + 1], tp[sorted12 + 2]
        fresh[1:] = ((c0[1:] != c0[:-1]) | (c1[1:] != c1[:-1])
                     | (c2[1:] != c2[:-1]))
    names = np.cumsum(fresh, dtype=np.int32)
    name_of = np.zeros(len(tp), dtype=np.int32)
    name_of[sorted12] = names
    triple_text = np.concatenate([name_of[mod1], name_of[mod2]])
    return sorted12, int(names[-1]), triple_text


def _sort_samples(tp, n, sort_by_keys):
    """Step 1: full sample order and 1-based sample ranks (recursing as needed)."""
    mod1, mod2 = _sample_positions(n)
    m = len(mod1) + len(mod2)
    rank_of = np.zeros(n + 3, dtype=np.int32)
    if m == 0:
        return np.empty(0, dtype=np.int32), rank_of, 0
    sorted12, distinct, triple_text = _name_triples(tp, mod1, mod2, sort_by_keys)
    depth = 0
    if distinct < m:
        sa_rec, depth = _dc3(triple_text, distinct, sort_by_keys)
        depth += 1
        rec_pos = np.concatenate([mod1, mod2])
        sorted12 = rec_pos[sa_rec]
    rank_of[sorted12] = np.arange(1, m + 1, dtype=np.int32)
    return sorted12, rank_of, depth


def _sort_nonsamples(tp, rank_of, n, sorted12, sigma, sort_by_keys):
    """Step 2: mod-0 suffixes ordered by (first char, rank of next suffix).

    Serial path: every mod-0 position is some mod-1 sample position
    minus one, so filtering the sorted samples lists the mod-0 suffixes
    already ordered by the rank of their successor; one stable counting
    pass by first character finishes the job.
    """
    if n == 0:
        return np.empty(0, dtype=np.int32)
    if sort_by_keys is None and _HAVE_NUMBA:
        by_rank = sorted12[sorted12 % 3 == 1] - 1
        return _counting_reorder(tp, by_rank, sigma)
    mod0 = np.arange(0, n, 3, dtype=np.int32)
    sorter = sort_by_keys or _lexsort_keys
    perm = sorter(tp[mod0], rank_of[mod0 + 1])
    return mod0[perm]


def _sample_less(a, b, tp, rank_of):
    """Vectorized suffix(a) < suffix(b) for sample a vs nonsample b."""
    a1, b1 = tp[a], tp[b]
    pair_tail = rank_of[a + 1] < rank_of[b + 1]
    a2, b2 = tp[a + 1], tp[b + 1]
    triple_tail = (a2 < b2) | ((a2 == b2) & (rank_of[a + 2] < rank_of[b + 2]))
    tail = np.where(a % 3 == 1, pair_tail, triple_tail)
    return (a1 < b1) | ((a1 == b1) & tail)


def _pair_keys(pos, tp, rank_of, rank_bits):
    return (tp[pos].astype(np.int64) << rank_bits) | rank_of[pos + 1]


def _triple_keys(pos, tp, rank_of, char_bits, rank_bits):
    return ((tp[pos].astype(np.int64) << (char_bits + rank_bits))
            | (tp[pos + 1].astype(np.int64) << rank_bits)
            | rank_of[pos + 2])


def _merge_by_keys(tp, rank_of, samples, nonsamples, char_bits, rank_bits):
    """Merge by counting crossings with packed comparison keys.

    The pair rule totally orders mod-1 samples against nonsamples, the
    triple rule mod-2 samples against nonsamples, and each key family is
    strictly increasing along its sorted sequence with no cross ties, so
    searchsorted yields exact smaller-element counts for every element.
    """
    m, k = len(samples), len(nonsamples)
    is_mod1 = samples % 3 == 1
    pair_s = _pair_keys(samples[is_mod1], tp, rank_of, rank_bits)
    trip_s = _triple_keys(samples[~is_mod1], tp, rank_of, char_bits, rank_bits)
    pair_b = _pair_keys(nonsamples, tp, rank_of, rank_bits)
    trip_b = _triple_keys(nonsamples, tp, rank_of, char_bits, rank_bits)
    pos_b = (np.arange(k, dtype=np.int64)
             + np.searchsorted(pair_s, pair_b)
             + np.searchsorted(trip_s, trip_b))
    idx = np.arange(m, dtype=np.int64)
    pos_s = np.empty(m, dtype=np.int64)
    pos_s[is_mod1] = idx[is_mod1] + np.searchsorted(pair_b, pair_s)
    pos_s[~is_mod1] = idx[~is_mod1] + np.searchsorted(trip_b, trip_s)
    sa = np.empty(m + k, dtype=samples.dtype)
    sa[pos_s] = samples
    sa[pos_b] = nonsamples
    return sa


def _merge_by_search(tp, rank_of, samples, nonsamples):
    """Merge via lockstep binary search; works at any alphabet width."""
    m, k = len(samples), len(nonsamples)
    lo = np.zeros(k, dtype=np.int64)
    hi = np.full(k, m, dtype=np.int64)
    for _ in range(int(m).bit_length() + 1):
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi) >> 1
        probe = samples[np.where(active, mid, 0)]
        less = _sample_less(probe, nonsamples, tp, rank_of)
        lo = np.where(active & less, mid + 1, lo)
        hi = np.where(active & ~less, mid, hi)
    inserted = np.bincount(lo, minlength=m + 1)
    before = np.cumsum(inserted)
    sa = np.empty(m + k, dtype=samples.dtype)
    sa[np.arange(m, dtype=np.int64) + before[:m]] = samples
    sa[lo + np.arange(k, dtype=np.int64)] = nonsamples
    return sa


def _merge(tp, rank_of, samples, nonsamples, n):
    """Step 3: merge the two sorted suffix sequences into one order."""
    m, k = len(samples), len(nonsamples)
    if m == 0:
        return nonsamples.copy()
    if k == 0:
        return samples.copy()
    if _HAVE_NUMBA:
        return _merge_walk(tp, rank_of,
                           np.ascontiguousarray(samples, dtype=np.int32),
                           np.ascontiguousarray(nonsamples, dtype=np.int32))
    char_bits = _key_width(tp)
    rank_bits = _key_width(rank_of)
    if 2 * char_bits + rank_bits <= _PACK_BITS:
        return _merge_by_keys(tp, rank_of, samples, nonsamples,
                              char_bits, rank_bits)
    return _merge_by_search(tp, rank_of, samples, nonsamples)


def _dc3(t: np.ndarray, sigma: int,
         sort_by_keys: SortByKeys | None) -> tuple[np.ndarray, int]:
    n = len(t)
    if n == 0:
        return np.empty(0, dtype=np.int64), 0
    if n == 1:
        return np.zeros(1, dtype=np.int64), 0
    tp = _padded(t, n)
    sorted12, rank_of, depth = _sort_samples(tp, n, sort_by_keys)
    sorted0 = _sort_nonsamples(tp, rank_of, n, sorted12, sigma, sort_by_keys)
    real_samples = sorted12[sorted12 < n]
    return _merge(tp, rank_of, real_samples, sorted0, n), depth


def build_sa_dc3(text: RankedText,
                 sort_by_keys: SortByKeys | None = None) -> SuffixArray:
    """Linear-time suffix array via DC3; output matches build_sa_oracle."""
    order, _ = _dc3(text.ranks, text.sigma, sort_by_keys)
    return SuffixArray.from_order(order)


def build_sa_oracle(text: RankedText) -> SuffixArray:
    """Comparison-sort every suffix directly; the correctness baseline.

    O(n^2 log n) worst case; intended for tests and small inputs.
    """
    if text.sigma > 255:
        raise ValueError("oracle supports alphabets up to 255 ranks")
    data = text.ranks.astype(np.uint8).tobytes()
    order = sorted(range(text.n), key=lambda i: data[i:])
    return SuffixArray.from_order(np.asarray(order, dtype=np.int64))


def sample_ranks(text: RankedText) -> dict[int, int]:
    """1-based ranks of the mod-1/mod-2 sample suffixes, keyed by position.

    Includes the padding position n when n mod 3 == 1 (its all-padding
    suffix ranks first). Exposed so the triple-sorting step can be
    checked in isolation.
    """
    n = text.n
    tp = _padded(text.ranks, n)
    sorted12, rank_of, _ = _sort_samples(tp, n, None)
    return {int(p): int(rank_of[p]) for p in np.sort(sorted12)}


def prepare_dc3_workspace(text: RankedText,
                          sort_by_keys: SortByKeys | None = None) -> Dc3Workspace:
    """Run DC3 steps 1 and 2 on a text, keeping the intermediates."""
    n = text.n
    tp = _padded(text.ranks, n)
    mod1, mod2 = _sample_positions(n)
    if len(mod1) + len(mod2):
        _, _, triple_text = _name_triples(tp, mod1, mod2, sort_by_keys)
    else:
        triple_text = np.empty(0, dtype=np.int32)
    sorted12, rank_of, depth = _sort_samples(tp, n, sort_by_keys)
    sorted0 = _sort_nonsamples(tp, rank_of, n, sorted12, text.sigma,
                               sort_by_keys)
    return Dc3Workspace(
        mod1=mod1,
        mod2=mod2,
        nonsample=np.arange(0, n, 3, dtype=np.int32),
        triple_text=triple_text,
        sample_rank=rank_of,
        sorted_samples=sorted12[sorted12 < n],
        sorted_nonsamples=sorted0,
        depth=depth,
    )


def merge_sample_nonsample(workspace: Dc3Workspace, text: RankedText) -> SuffixArray:
    """Step 3 as a standalone operation on a prepared workspace."""
    tp = _padded(text.ranks, text.n)
    order = _merge(tp, workspace.sample_rank, workspace.sorted_samples,
                   workspace.sorted_nonsamples, text.n)
    return SuffixArray.from_order(order)


@njit(cache=True)
def _kasai_scan(t, sa, rank):  # pragma: no cover - jitted
    n = t.shape[0]
    lcp = np.zeros(n, dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and t[i + h] == t[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def build_lcp(text: RankedText, sa: SuffixArray) -> LcpArray:
    """Adjacent-suffix LCP lengths in O(n) via the inverse-rank scan.

    Walks positions in text order so the matched prefix length h can
    only drop by one between steps (the h-decrement trick).
    """
    n = text.n
    if n == 0:
        return LcpArray(np.empty(0, dtype=np.int64))
    if _HAVE_NUMBA:
        return LcpArray(_kasai_scan(text.ranks, sa.sa, sa.rank))
    t = text.ranks.tolist()
    sa_list = sa.sa.tolist()
    rank = sa.rank.tolist()
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa_list[r - 1]
            while i + h < n and j + h < n and t[i + h] == t[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return LcpArray(np.asarray(lcp, dtype=np.int64))
