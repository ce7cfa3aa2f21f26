"""DNA sequence parsing, encoding, and generation.

Sequences are plain A/C/G/T strings (N optional, policy-controlled). All
index construction downstream runs on ``RankedText``: the sequence mapped
to integer ranks 1..sigma, with 0 reserved as the end-of-text padding
sentinel that triple-based suffix sorting relies on.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable

import numpy as np

ALPHABET = "ACGT"
ALPHABET_N = "ACGTN"


class NPolicy(Enum):
    """How to treat the ambiguity base N: refuse it or rank it above T."""

    REJECT = "reject"
    KEEP = "keep"


class SequenceError(ValueError):
    """Malformed FASTA input or a residue outside the active alphabet."""


@dataclass(frozen=True)
class DnaSequence:
    id: str
    residues: str
    description: str = ""

    def __len__(self) -> int:
        return len(self.residues)


@dataclass(frozen=True, eq=False)
class RankedText:
    """Integer-encoded sequence: ranks in 1..sigma, 0 never appears.

    The rank mapping is order-preserving (A < C < G < T < N), so suffix
    comparisons on ranks agree with comparisons on residues.
    """

    ranks: np.ndarray
    sigma: int
    n: int = field(default=-1)

    def __post_init__(self):
        arr = np.asarray(self.ranks, dtype=np.int64)
        arr.flags.writeable = False
        object.__setattr__(self, "ranks", arr)
        if self.n < 0:
            object.__setattr__(self, "n", len(arr))
        if len(arr) and (arr.min() < 1 or arr.max() > self.sigma):
            raise ValueError("ranks must lie in 1..sigma")

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankedText):
            return NotImplemented
        return self.sigma == other.sigma and np.array_equal(self.ranks, other.ranks)


def _alphabet_for(policy: NPolicy) -> str:
    return ALPHABET_N if policy is NPolicy.KEEP else ALPHABET


def parse_fasta(source: str | IO[str] | Iterable[str],
                policy: NPolicy = NPolicy.REJECT) -> list[DnaSequence]:
    """Parse FASTA text into records, validating residues as we go.

    Accepts a string, an open text stream, or any iterable of lines.
    Wrapped sequence lines are concatenated; residues are uppercased.
    Raises SequenceError naming the record, line, and offending byte on
    any residue outside the policy's alphabet, or on a missing header.
    """
    if isinstance(source, str):
        lines: Iterable[str] = io.StringIO(source)
    else:
        lines = source
    allowed = set(_alphabet_for(policy))

    records: list[DnaSequence] = []
    cur_id: str | None = None
    cur_desc = ""
    cur_parts: list[str] = []

    def flush():
        if cur_id is not None:
            records.append(DnaSequence(cur_id, "".join(cur_parts), cur_desc))

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            header = line[1:].strip()
            if not header:
                raise SequenceError(f"line {lineno}: empty FASTA header")
            cur_id, _, cur_desc = header.partition(" ")
            cur_desc = cur_desc.strip()
            cur_parts = []
            continue
        if cur_id is None:
            raise SequenceError(
                f"line {lineno}: sequence data before any '>' header")
        chunk = line.upper()
        for off, ch in enumerate(chunk):
            if ch not in allowed:
                raise SequenceError(
                    f"record {cur_id!r}, line {lineno}: "
                    f"illegal residue {ch!r} at column {off + 1}")
        cur_parts.append(chunk)
    flush()
    return records


def write_fasta(records: Iterable[DnaSequence], width: int = 60) -> str:
    """Serialize records back to FASTA text (inverse of parse_fasta)."""
    out: list[str] = []
    for rec in records:
        header = f">{rec.id}"
        if rec.description:
            header += f" {rec.description}"
        out.append(header)
        seq = rec.residues
        for i in range(0, max(len(seq), 1), width):
            chunk = seq[i:i + width]
            if chunk:
                out.append(chunk)
    return "\n".join(out) + "\n" if out else ""


def encode(seq: DnaSequence, policy: NPolicy = NPolicy.REJECT) -> RankedText:
    """Map residues to ranks: A=1 C=2 G=3 T=4 (N=5 under NPolicy.KEEP)."""
    alphabet = _alphabet_for(policy)
    lut = np.zeros(256, dtype=np.int64)
    for rank, ch in enumerate(alphabet, start=1):
        lut[ord(ch)] = rank
    raw = np.frombuffer(seq.residues.encode("ascii"), dtype=np.uint8)
    ranks = lut[raw]
    if len(ranks) and ranks.min() == 0:
        pos = int(np.argmin(ranks != 0))
        raise SequenceError(
            f"record {seq.id!r}: residue {seq.residues[pos]!r} at position "
            f"{pos} not allowed under policy={policy.value}")
    return RankedText(ranks=ranks, sigma=len(alphabet))


def decode(text: RankedText) -> str:
    """Inverse of encode: ranks back to residue letters."""
    if text.n == 0:
        return ""
    return "".join(ALPHABET_N[r - 1] for r in text.ranks.tolist())


def gen_random(n: int, seed: int,
               weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25),
               seq_id: str | None = None) -> DnaSequence:
    """Deterministic random sequence from numpy's seeded PCG64 stream.

    Fixed (n, seed, weights) always yields the same sequence, on any
    platform, which keeps benchmark inputs and test fixtures stable.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    w = np.asarray(weights, dtype=np.float64)
    if len(w) != 4 or (w < 0).any() or w.sum() <= 0:
        raise ValueError("weights must be 4 nonnegative values with a positive sum")
    rng = np.random.default_rng(seed)
    draws = rng.choice(4, size=n, p=w / w.sum())
    residues = np.frombuffer(ALPHABET.encode("ascii"), dtype=np.uint8)[draws]
    return DnaSequence(
        id=seq_id or f"random-{n}-{seed}",
        residues=residues.tobytes().decode("ascii"),
        description=f"generated n={n} seed={seed}",
    )
