"""Binary persistence for built indexes (".saix" files).

Layout, all integers little-endian unsigned 64-bit unless noted:

    magic     8 bytes, ASCII "SAIX1" + three NULs
    version   u64, currently 1
    flags     u64, bit 0 set when the alphabet includes N
    n         u64, text length
    sigma     u64, alphabet size
    text      n bytes, one rank per byte
    sa        n u64 entries
    lcp       n u64 entries
    crc       u64, CRC-32 of everything above (high 32 bits zero)

RMQ structures are derived data: never stored, always rebuilt on load.
"""

from __future__ import annotations

import io
import struct
import zlib
from pathlib import Path
from typing import BinaryIO

import numpy as np

from .overlap import LcpQueryEngine, RmqKind
from .sequence import RankedText
from .suffix_index import LcpArray, SuffixArray

MAGIC = b"SAIX1\x00\x00\x00"
VERSION = 1
FLAG_N_ALPHABET = 1 << 0

_U64 = struct.Struct("<Q")


class IndexFileError(Exception):
    """Base class for unreadable index files."""


class BadMagicError(IndexFileError):
    pass


class UnsupportedVersionError(IndexFileError):
    pass


class ChecksumError(IndexFileError):
    pass


class TruncatedFileError(IndexFileError):
    pass


def _open_sink(destination):
    if isinstance(destination, (str, Path)):
        return open(destination, "wb"), True
    return destination, False


def save_index(engine: LcpQueryEngine, destination: str | Path | BinaryIO) -> int:
    """Write an engine's text, suffix array, and lcp array; returns bytes written."""
    text = engine.text
    if text.sigma > 255:
        raise ValueError("index format stores one rank per byte; sigma must be <= 255")
    flags = FLAG_N_ALPHABET if text.sigma >= 5 else 0
    body = io.BytesIO()
    body.write(MAGIC)
    body.write(_U64.pack(VERSION))
    body.write(_U64.pack(flags))
    body.write(_U64.pack(text.n))
    body.write(_U64.pack(text.sigma))
    body.write(text.ranks.astype(np.uint8).tobytes())
    body.write(engine.sa.sa.astype("<u8").tobytes())
    body.write(engine.lcp.lcp.astype("<u8").tobytes())
    payload = body.getvalue()
    blob = payload + _U64.pack(zlib.crc32(payload))
    sink, owned = _open_sink(destination)
    try:
        sink.write(blob)
    finally:
        if owned:
            sink.close()
    return len(blob)


def load_index(source: str | Path | BinaryIO,
               rmq_kind: RmqKind = "sparse") -> LcpQueryEngine:
    """Read an index file back into an engine, rebuilding the RMQ structure."""
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            blob = fh.read()
    else:
        blob = source.read()

    header_size = len(MAGIC) + 4 * _U64.size
    if len(blob) < header_size + _U64.size:
        raise TruncatedFileError(
            f"file is {len(blob)} bytes; shorter than any valid index")
    if blob[: len(MAGIC)] != MAGIC:
        raise BadMagicError(f"bad magic {blob[:len(MAGIC)]!r}")
    version, flags, n, sigma = (
        _U64.unpack_from(blob, len(MAGIC) + k * _U64.size)[0] for k in range(4))
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported version {version}")

    expected = header_size + n + 2 * 8 * n + _U64.size
    if len(blob) < expected:
        raise TruncatedFileError(
            f"file is {len(blob)} bytes; need {expected} for n={n}")
    payload, crc_raw = blob[:expected - _U64.size], blob[expected - _U64.size:expected]
    (crc,) = _U64.unpack(crc_raw)
    if zlib.crc32(payload) != crc:
        raise ChecksumError("checksum mismatch; file is corrupt")

    off = header_size
    ranks = np.frombuffer(blob, dtype=np.uint8, count=n, offset=off).astype(np.int64)
    off += n
    sa = np.frombuffer(blob, dtype="<u8", count=n, offset=off).astype(np.int64)
    off += 8 * n
    lcp = np.frombuffer(blob, dtype="<u8", count=n, offset=off).astype(np.int64)

    text = RankedText(ranks=ranks, sigma=int(sigma))
    if n:
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = np.arange(n, dtype=np.int64)
        sa_struct = SuffixArray(n=int(n), sa=sa, rank=rank)
    else:
        sa_struct = SuffixArray(n=0, sa=sa, rank=sa.copy())
    return LcpQueryEngine.from_parts(text, sa_struct, LcpArray(lcp), rmq_kind)
