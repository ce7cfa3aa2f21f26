"""Benchmark harness: serial vs parallel suffix-array construction.

Each cell (implementation, n, seed) generates a random sequence, checks
once that the parallel and serial builders agree on it, then records the
median wall time of `repetitions` runs after one discarded warmup. Times
land in CSV files together with derived baseline/subject speedup ratios.

Slower subjects simply yield ratios below 1; ratios are never negated.
"""

from __future__ import annotations

import ctypes
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .parallel_sort import SortConfig, parallel_build_sa
from .sequence import encode, gen_random
from .suffix_index import build_sa_dc3, build_sa_oracle

IMPLEMENTATIONS = ("serial-dc3", "parallel-dc3", "oracle")
DEFAULT_SIZES = (256, 1024, 4096, 16384, 65536, 262144, 1048576)
DEFAULT_REPETITIONS = 5

RECORD_HEADER = "label,n,seed,chunk32,reps,seconds"
SPEEDUP_HEADER = "n,baseline,subject,ratio"


class BenchMismatchError(RuntimeError):
    """Raised when the parallel and serial builders disagree on a cell."""


@dataclass(frozen=True)
class BenchRecord:
    label: str
    n: int
    seed: int
    chunk32: bool
    reps: int
    seconds: float

    def __post_init__(self):
        if self.label not in IMPLEMENTATIONS:
            raise ValueError(f"unknown implementation label {self.label!r}")
        if self.n < 1 or self.reps < 1 or self.seconds <= 0:
            raise ValueError("n, reps must be >= 1 and seconds positive")


@dataclass(frozen=True)
class SpeedupRow:
    n: int
    baseline: str
    subject: str
    ratio: float


def tune_allocator(threshold: int = 1 << 28) -> bool:
    """Keep large freed blocks on the glibc heap instead of unmapping them.

    Per-build page-fault churn otherwise dominates small timing cells and
    adds noise to large ones. Returns False when the platform has no
    mallopt (the harness then simply measures with default behavior).
    """
    try:
        libc = ctypes.CDLL("libc.so.6", use_errno=True)
        m_trim_threshold, m_mmap_threshold = -1, -3
        ok = libc.mallopt(m_trim_threshold, threshold)
        return bool(libc.mallopt(m_mmap_threshold, threshold) and ok)
    except OSError:
        return False


def _builder(label: str, config: SortConfig):
    if label == "serial-dc3":
        return build_sa_dc3
    if label == "parallel-dc3":
        return lambda text: parallel_build_sa(text, config)
    if label == "oracle":
        return build_sa_oracle
    raise ValueError(f"unknown implementation label {label!r}")


def _median(values: list[float]) -> float:
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2


def run_bench(sizes: Sequence[int], seeds: Sequence[int], config: SortConfig,
              repetitions: int = DEFAULT_REPETITIONS,
              implementations: Sequence[str] = ("serial-dc3", "parallel-dc3"),
              progress=None) -> list[BenchRecord]:
    """Time every (size, seed, implementation) cell; see the module intro.

    Raises BenchMismatchError (before any timing for that cell) if the
    parallel builder disagrees with the serial one on the cell's input.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    for label in implementations:
        _builder(label, config)  # validate labels up front
    tune_allocator()
    records = []
    for n in sizes:
        if n < 1:
            raise ValueError("sizes must be >= 1")
        for seed in seeds:
            text = encode(gen_random(n, seed))
            serial = build_sa_dc3(text)
            parallel = parallel_build_sa(text, config)
            if (serial.sa != parallel.sa).any():
                raise BenchMismatchError(
                    f"parallel and serial suffix arrays differ at n={n} seed={seed}")
            for label in implementations:
                build = _builder(label, config)
                build(text)  # warmup, discarded
                laps = []
                for _ in range(repetitions):
                    t0 = time.perf_counter()
                    build(text)
                    laps.append(time.perf_counter() - t0)
                rec = BenchRecord(label=label, n=n, seed=seed,
                                  chunk32=config.chunk_is_multiple_of_32,
                                  reps=repetitions,
                                  seconds=round(_median(laps), 9))
                records.append(rec)
                if progress is not None:
                    progress(rec)
    return records


def compute_speedup(baseline: BenchRecord, subject: BenchRecord) -> SpeedupRow:
    """baseline time / subject time, to two decimals; requires matching cells."""
    if baseline.n != subject.n:
        raise ValueError(f"size mismatch: {baseline.n} vs {subject.n}")
    if baseline.seed != subject.seed:
        raise ValueError(f"seed mismatch: {baseline.seed} vs {subject.seed}")
    return SpeedupRow(n=baseline.n, baseline=baseline.label,
                      subject=subject.label,
                      ratio=round(baseline.seconds / subject.seconds, 2))


def speedups_from_records(records: Iterable[BenchRecord],
                          baseline: str = "serial-dc3",
                          subject: str = "parallel-dc3") -> list[SpeedupRow]:
    by_cell: dict[tuple[int, int, str], BenchRecord] = {}
    for rec in records:
        by_cell[(rec.n, rec.seed, rec.label)] = rec
    rows = []
    for (n, seed, label), rec in sorted(by_cell.items()):
        if label != baseline:
            continue
        other = by_cell.get((n, seed, subject))
        if other is not None:
            rows.append(compute_speedup(rec, other))
    return rows


def _open_text(sink, mode: str):
    if isinstance(sink, (str, Path)):
        return open(sink, mode, encoding="ascii", newline=""), True
    return sink, False


def write_records_csv(records: Iterable[BenchRecord], sink) -> None:
    """Deterministic order: label, then n, then seed; times at 9 decimals."""
    out, owned = _open_text(sink, "w")
    try:
        out.write(RECORD_HEADER + "\n")
        for rec in sorted(records, key=lambda r: (r.label, r.n, r.seed)):
            out.write(f"{rec.label},{rec.n},{rec.seed},{int(rec.chunk32)},"
                      f"{rec.reps},{rec.seconds:.9f}\n")
    finally:
        if owned:
            out.close()


def write_speedup_csv(rows: Iterable[SpeedupRow], sink) -> None:
    out, owned = _open_text(sink, "w")
    try:
        out.write(SPEEDUP_HEADER + "\n")
        for row in sorted(rows, key=lambda r: (r.n, r.baseline, r.subject)):
            out.write(f"{row.n},{row.baseline},{row.subject},{row.ratio:.2f}\n")
    finally:
        if owned:
            out.close()


def write_csv(records: Iterable[BenchRecord], rows: Iterable[SpeedupRow],
              records_sink, speedup_sink) -> None:
    write_records_csv(records, records_sink)
    write_speedup_csv(rows, speedup_sink)


def read_records_csv(source) -> list[BenchRecord]:
    src, owned = _open_text(source, "r")
    try:
        lines = src.read().splitlines()
    finally:
        if owned:
            src.close()
    if not lines or lines[0] != RECORD_HEADER:
        raise ValueError("not a bench records file")
    records = []
    for line in lines[1:]:
        label, n, seed, chunk32, reps, seconds = line.split(",")
        records.append(BenchRecord(label=label, n=int(n), seed=int(seed),
                                   chunk32=bool(int(chunk32)), reps=int(reps),
                                   seconds=float(seconds)))
    return records


def read_speedup_csv(source) -> list[SpeedupRow]:
    src, owned = _open_text(source, "r")
    try:
        lines = src.read().splitlines()
    finally:
        if owned:
            src.close()
    if not lines or lines[0] != SPEEDUP_HEADER:
        raise ValueError("not a speedup file")
    rows = []
    for line in lines[1:]:
        n, baseline, subject, ratio = line.split(",")
        rows.append(SpeedupRow(n=int(n), baseline=baseline, subject=subject,
                               ratio=float(ratio)))
    return rows


def advisories(records: Iterable[BenchRecord]) -> list[str]:
    """Non-fatal observations, e.g. serial times that shrink as n grows."""
    notes = []
    by_label_seed: dict[tuple[str, int], list[BenchRecord]] = {}
    for rec in records:
        by_label_seed.setdefault((rec.label, rec.seed), []).append(rec)
    for (label, seed), cells in sorted(by_label_seed.items()):
        cells.sort(key=lambda r: r.n)
        for prev, cur in zip(cells, cells[1:]):
            if cur.seconds < prev.seconds:
                notes.append(
                    f"advisory: {label} seed={seed} time fell from "
                    f"{prev.seconds:.6f}s at n={prev.n} to {cur.seconds:.6f}s "
                    f"at n={cur.n}")
    return notes
