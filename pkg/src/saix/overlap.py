"""LCP queries between suffixes and longest-overlap search between sequences.

The LCP of two arbitrary suffixes equals the minimum entry of the lcp
array strictly between their positions in suffix order, so one RMQ
answers any pair. The longest overlap region of two sequences (their
longest common substring) falls out of a generalized suffix array: build
one index over A + separator + B and take the best adjacent pair whose
suffixes start on opposite sides of the separator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .rmq import CartesianRmq, SparseTable
from .sequence import DnaSequence, NPolicy, RankedText, encode
from .suffix_index import LcpArray, SuffixArray, build_lcp, build_sa_dc3

RmqKind = Literal["sparse", "cartesian"]

SEPARATOR_RANK = 1  # sits between the padding sentinel 0 and every residue rank


@dataclass(frozen=True, eq=False)
class LcpQueryEngine:
    """A text with its suffix array, lcp array, and an RMQ over the lcp."""

    text: RankedText
    sa: SuffixArray
    lcp: LcpArray
    rmq: SparseTable | CartesianRmq | None

    @classmethod
    def build(cls, text: RankedText, rmq_kind: RmqKind = "sparse",
              sa: SuffixArray | None = None) -> "LcpQueryEngine":
        sa = sa or build_sa_dc3(text)
        lcp = build_lcp(text, sa)
        return cls.from_parts(text, sa, lcp, rmq_kind)

    @classmethod
    def from_parts(cls, text: RankedText, sa: SuffixArray, lcp: LcpArray,
                   rmq_kind: RmqKind = "sparse") -> "LcpQueryEngine":
        if text.n == 0:
            rmq = None
        elif rmq_kind == "sparse":
            rmq = SparseTable(lcp.lcp)
        elif rmq_kind == "cartesian":
            rmq = CartesianRmq(lcp.lcp)
        else:
            raise ValueError(f"unknown rmq kind {rmq_kind!r}")
        return cls(text=text, sa=sa, lcp=lcp, rmq=rmq)


def lcp_query(engine: LcpQueryEngine, i: int, j: int) -> int:
    """Length of the longest common prefix of suffix(i) and suffix(j)."""
    n = engine.text.n
    if not (0 <= i < n) or not (0 <= j < n):
        raise IndexError(f"positions ({i}, {j}) out of bounds for length {n}")
    if i == j:
        return n - i
    ri = int(engine.sa.rank[i])
    rj = int(engine.sa.rank[j])
    lo, hi = (ri, rj) if ri < rj else (rj, ri)
    k = engine.rmq.query(lo + 1, hi)
    return int(engine.lcp.lcp[k])


@dataclass(frozen=True, eq=False)
class GeneralizedText:
    """encode(A) + separator + encode(B), with every residue rank shifted
    up by one so the separator owns rank 1 and never matches a residue."""

    ranks: np.ndarray
    boundary: int
    len_a: int
    len_b: int
    sigma: int

    @classmethod
    def build(cls, a: DnaSequence, b: DnaSequence,
              policy: NPolicy = NPolicy.REJECT) -> "GeneralizedText":
        ra = encode(a, policy)
        rb = encode(b, policy)
        sigma = max(ra.sigma, rb.sigma) + 1
        ranks = np.concatenate([
            ra.ranks + 1,
            np.array([SEPARATOR_RANK], dtype=np.int64),
            rb.ranks + 1,
        ])
        return cls(ranks=ranks, boundary=ra.n, len_a=ra.n, len_b=rb.n,
                   sigma=sigma)

    def to_ranked_text(self) -> RankedText:
        return RankedText(ranks=self.ranks, sigma=self.sigma)


@dataclass(frozen=True)
class OverlapResult:
    """Longest substring common to A and B; zero length pins positions to 0."""

    length: int
    pos_a: int
    pos_b: int


def longest_overlap(a: DnaSequence, b: DnaSequence,
                    policy: NPolicy = NPolicy.REJECT) -> OverlapResult:
    """Longest common substring of A and B via the generalized suffix array.

    Any cross-sequence pair's LCP is the minimum over the adjacent lcp
    entries between them, so the best value is always attained by two
    adjacent suffixes from different sources. The separator's unique
    rank stops matches from running across the boundary. Ties resolve
    to the smallest position in A, then in B.
    """
    if len(a) == 0 or len(b) == 0:
        return OverlapResult(0, 0, 0)
    gen = GeneralizedText.build(a, b, policy)
    text = gen.to_ranked_text()
    index = build_sa_dc3(text)
    sa = index.sa
    lcp = build_lcp(text, index).lcp
    boundary = gen.boundary

    # side: 0 for positions in A, 1 for B, separator excluded
    side = np.where(sa < boundary, 0, np.where(sa > boundary, 1, -1))
    cross = (side[:-1] >= 0) & (side[1:] >= 0) & (side[:-1] != side[1:])
    if not cross.any():
        return OverlapResult(0, 0, 0)
    best = int(np.where(cross, lcp[1:], -1).max())
    if best <= 0:
        return OverlapResult(0, 0, 0)

    # every suffix in a run of adjacent entries with lcp >= best shares a
    # length-best prefix, so any A-side/B-side pairing within one run is a
    # valid occurrence pair; pick the leftmost-in-A run, then leftmost in B
    run_id = np.concatenate([[0], np.cumsum(lcp[1:] < best)])
    nruns = int(run_id[-1]) + 1
    sentinel = np.iinfo(np.int64).max
    min_a = np.full(nruns, sentinel)
    min_b = np.full(nruns, sentinel)
    np.minimum.at(min_a, run_id[side == 0], sa[side == 0])
    np.minimum.at(min_b, run_id[side == 1], sa[side == 1])
    both = (min_a != sentinel) & (min_b != sentinel)
    cand = np.nonzero(both)[0]
    take = cand[np.lexsort((min_b[cand], min_a[cand]))[0]]
    return OverlapResult(best, int(min_a[take]),
                         int(min_b[take]) - boundary - 1)


def overlap_report(result: OverlapResult, a: DnaSequence,
                   b: DnaSequence) -> tuple[str, str]:
    """Human-readable summary plus a one-object JSON record."""
    substring = a.residues[result.pos_a:result.pos_a + result.length]
    check = b.residues[result.pos_b:result.pos_b + result.length]
    if substring != check:
        raise ValueError("overlap result does not match the given sequences")
    record = {
        "length": result.length,
        "posA": result.pos_a,
        "posB": result.pos_b,
        "substring": substring,
    }
    if result.length:
        human = (f"overlap of {result.length} residues: {a.id}[{result.pos_a}] "
                 f"= {b.id}[{result.pos_b}] = {substring!r}")
    else:
        human = f"no overlap between {a.id} and {b.id}"
    return human, json.dumps(record)


def parse_overlap_record(payload: str) -> OverlapResult:
    """Inverse of the JSON half of overlap_report."""
    rec = json.loads(payload)
    return OverlapResult(length=rec["length"], pos_a=rec["posA"],
                         pos_b=rec["posB"])
