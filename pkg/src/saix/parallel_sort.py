"""Deterministic bulk-synchronous radix sort, modeled on a GPU split kernel.

The engine mirrors how a grid of lockstep lanes sorts on an accelerator,
one low-order digit per pass:

  * every lane extracts its key's current bit,
  * a doubling-offset scan of the negated bits runs in O(log n) phases,
    each phase reading only state committed by the previous one
    (double-buffered, the software analogue of a barrier),
  * zero-bit keys scatter to their scan value, one-bit keys to
    index - scan + zero_total, which is a stable two-way partition.

chunked_sort splits the input into fixed-size chunks (thread blocks),
sorts every chunk independently with the same passes, and then merges
sorted runs pairwise until one remains. Results are a pure function of
(keys, digit/bit settings): chunk boundaries and worker count never
change the output, only how the work is carved up.

parallel_build_sa runs DC3 with its triple-sorting and rank-sorting
passes routed through this engine instead of the serial sorter.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .sequence import RankedText
from .suffix_index import SuffixArray, _dc3

MAX_KEY_BITS = 63  # keys are held in signed 64-bit lanes
_BAND_ROWS = 32  # chunks per band; bands are the unit of worker scheduling


@dataclass(frozen=True)
class SortConfig:
    """Engine knobs: digit width, key width, chunking, and worker count."""

    digit_bits: int = 1
    total_bits: int = 32
    chunk_size: int = 4096
    workers: int = 1

    def __post_init__(self):
        if self.digit_bits < 1:
            raise ValueError("digit_bits must be >= 1")
        if self.total_bits < 1 or self.total_bits > MAX_KEY_BITS:
            raise ValueError(f"total_bits must be in 1..{MAX_KEY_BITS}")
        if self.total_bits % self.digit_bits:
            raise ValueError("total_bits must be a multiple of digit_bits")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def chunk_is_multiple_of_32(self) -> bool:
        return self.chunk_size % 32 == 0


@dataclass(frozen=True)
class SplitState:
    """Per-lane state of one split pass.

    zero_flags negates bits; scanned is the exclusive prefix sum of
    zero_flags; zero_total = scanned[-1] + zero_flags[-1]; dest is the
    stable destination of every key and is always a permutation.
    """

    bits: np.ndarray
    zero_flags: np.ndarray
    scanned: np.ndarray
    zero_total: int
    dest: np.ndarray


@dataclass(frozen=True)
class ChunkPlan:
    """Contiguous, disjoint chunk boundaries covering the input exactly."""

    boundaries: tuple[tuple[int, int], ...]
    chunk_size: int
    workers: int


def plan_chunks(n: int, config: SortConfig) -> ChunkPlan:
    cs = config.chunk_size
    bounds = tuple((s, min(s + cs, n)) for s in range(0, n, cs))
    return ChunkPlan(boundaries=bounds, chunk_size=cs, workers=config.workers)


def _as_keys(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.int64)


def _check_width(keys: np.ndarray, total_bits: int) -> None:
    if len(keys) == 0:
        return
    lo, hi = int(keys.min()), int(keys.max())
    if lo < 0:
        raise ValueError("keys must be nonnegative")
    if hi >> total_bits:
        raise ValueError(
            f"key {hi} exceeds the configured width of {total_bits} bits")


def exclusive_scan(values) -> np.ndarray:
    """Prefix sums with out[0] = 0, via the doubling-offset phase loop.

    Each phase adds the committed array shifted by the current offset
    into a fresh buffer, so lanes never read a value written in the
    same phase. O(log n) phases; equals the sequential definition.
    """
    vals = _as_keys(values)
    n = len(vals)
    if n == 0:
        return vals.copy()
    incl = vals
    off = 1
    while off < n:
        nxt = incl.copy()
        nxt[off:] += incl[:-off]
        incl = nxt
        off <<= 1
    out = np.empty_like(incl)
    out[0] = 0
    out[1:] = incl[:-1]
    return out


def _exclusive_scan_rows(mat: np.ndarray) -> np.ndarray:
    """exclusive_scan applied to every row in lockstep."""
    rows, width = mat.shape
    incl = mat
    off = 1
    while off < width:
        nxt = incl.copy()
        nxt[:, off:] += incl[:, :-off]
        incl = nxt
        off <<= 1
    out = np.empty_like(incl)
    out[:, 0] = 0
    out[:, 1:] = incl[:, :-1]
    return out


def split_by_bit(keys, bit: int) -> tuple[np.ndarray, SplitState]:
    """Stable partition by one bit: zero-bit keys first, order preserved."""
    keys = _as_keys(keys)
    n = len(keys)
    bits = (keys >> bit) & 1
    zero_flags = bits ^ 1
    scanned = exclusive_scan(zero_flags)
    zero_total = int(scanned[-1] + zero_flags[-1]) if n else 0
    lanes = np.arange(n, dtype=np.int64)
    dest = np.where(bits == 1, lanes - scanned + zero_total, scanned)
    out = np.empty_like(keys)
    out[dest] = keys
    return out, SplitState(bits=bits, zero_flags=zero_flags, scanned=scanned,
                           zero_total=zero_total, dest=dest)


def _sort_rows(mat: np.ndarray, total_bits: int, digit_bits: int) -> np.ndarray:
    """Radix-sort every row of a matrix independently, all rows in lockstep.

    digit_bits == 1 is the split-primitive path; wider digits fall back
    to a stable argsort of the digit values, which is the same stable
    counting-sort reorder with fewer passes.
    """
    rows, width = mat.shape
    out = mat
    if width <= 1:
        return out.copy()
    lanes = np.arange(width, dtype=np.int64)
    for shift in range(0, total_bits, digit_bits):
        if digit_bits == 1:
            bits = (out >> shift) & 1
            zeros = bits ^ 1
            scanned = _exclusive_scan_rows(zeros)
            ztot = scanned[:, -1:] + zeros[:, -1:]
            dest = np.where(bits == 1, lanes - scanned + ztot, scanned)
            nxt = np.empty_like(out)
            np.put_along_axis(nxt, dest, out, axis=1)
            out = nxt
        else:
            digit = (out >> shift) & ((1 << digit_bits) - 1)
            order = np.argsort(digit, axis=1, kind="stable")
            out = np.take_along_axis(out, order, axis=1)
    return out


def radix_sort(keys, config: SortConfig | None = None) -> np.ndarray:
    """Ascending stable sort of nonnegative integer keys, digit by digit."""
    config = config or SortConfig()
    keys = _as_keys(keys)
    _check_width(keys, config.total_bits)
    if len(keys) == 0:
        return keys.copy()
    return _sort_rows(keys.reshape(1, -1), config.total_bits,
                      config.digit_bits).reshape(-1)


def _merge_sorted(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Stable merge of two sorted runs; ties take the left run first."""
    out = np.empty(len(a) + len(b), dtype=a.dtype)
    out[np.searchsorted(b, a, side="left") + np.arange(len(a))] = a
    out[np.searchsorted(a, b, side="right") + np.arange(len(b))] = b
    return out


def chunked_sort(keys, config: SortConfig | None = None) -> np.ndarray:
    """Sort each chunk independently, then merge pairs of runs in rounds.

    Full chunks form a matrix whose rows sort in lockstep; a worker
    handles a contiguous band of rows. The ragged tail chunk, if any,
    sorts on its own. Output equals radix_sort for every configuration.
    """
    config = config or SortConfig()
    keys = _as_keys(keys)
    _check_width(keys, config.total_bits)
    n = len(keys)
    if n == 0:
        return keys.copy()
    cs = config.chunk_size
    full = n // cs
    runs: list[np.ndarray] = []
    if full:
        mat = keys[: full * cs].reshape(full, cs)
        # fixed-height bands keep each pass cache-resident; a worker takes
        # one band at a time, and banding never changes any row's result
        bands = [mat[r: r + _BAND_ROWS]
                 for r in range(0, full, _BAND_ROWS)]
        sort = lambda band: _sort_rows(band, config.total_bits,
                                       config.digit_bits)
        if config.workers > 1 and len(bands) > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                done = list(pool.map(sort, bands))
        else:
            done = [sort(band) for band in bands]
        runs.extend(row for band in done for row in band)
    if full * cs < n:
        tail = keys[full * cs:]
        runs.append(_sort_rows(tail.reshape(1, -1), config.total_bits,
                               config.digit_bits).reshape(-1))
    while len(runs) > 1:
        merged = [_merge_sorted(runs[i], runs[i + 1])
                  for i in range(0, len(runs) - 1, 2)]
        if len(runs) % 2:
            merged.append(runs[-1])
        runs = merged
    return np.ascontiguousarray(runs[0])


def _engine_sorter(config: SortConfig):
    """Stable multi-key argsort where every pass runs on chunked_sort.

    Each pass packs (key value, current lane index) into one integer;
    sorting the packed keys reorders lanes stably by that key, and the
    low bits recover the permutation.
    """
    def sort_by_keys(*key_arrays: np.ndarray) -> np.ndarray:
        m = len(key_arrays[0])
        if m == 0:
            return np.empty(0, dtype=np.int64)
        idx_bits = max(1, int(m - 1).bit_length())
        mask = (1 << idx_bits) - 1
        perm = np.arange(m, dtype=np.int64)
        for key in reversed(key_arrays):  # least significant key first
            k = _as_keys(key)[perm]
            key_bits = max(1, int(k.max()).bit_length())
            total = key_bits + idx_bits
            total = ((total + config.digit_bits - 1)
                     // config.digit_bits) * config.digit_bits
            if total > MAX_KEY_BITS:
                raise ValueError("packed sort key exceeds 63 bits")
            packed = (k << idx_bits) | np.arange(m, dtype=np.int64)
            ordered = chunked_sort(
                packed, dataclasses.replace(config, total_bits=total))
            perm = perm[ordered & mask]
        return perm

    return sort_by_keys


def parallel_build_sa(text: RankedText,
                      config: SortConfig | None = None) -> SuffixArray:
    """DC3 with all sorting passes on the chunked engine; equals the serial build."""
    config = config or SortConfig()
    order, _ = _dc3(text.ranks, text.sigma, _engine_sorter(config))
    return SuffixArray.from_order(order)
