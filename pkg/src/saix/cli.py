"""Command-line interface: index, query, overlap, bench, selftest.

Exit codes: 0 ok, 1 generic failure, 2 missing input, 3 bad input
content, 4 bad query, 5 internal mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import bench, index_store, overlap, parallel_sort, rmq, sequence, suffix_index

EXIT_OK = 0
EXIT_GENERIC = 1
EXIT_MISSING_INPUT = 2
EXIT_BAD_CONTENT = 3
EXIT_BAD_QUERY = 4
EXIT_MISMATCH = 5


def _sort_config(args) -> parallel_sort.SortConfig:
    return parallel_sort.SortConfig(
        digit_bits=args.digit_bits,
        total_bits=args.digit_bits * ((32 + args.digit_bits - 1) // args.digit_bits),
        chunk_size=args.chunk,
        workers=args.workers,
    )


def _read_first_record(path: str, what: str) -> sequence.DnaSequence:
    with open(path, "r", encoding="ascii") as fh:
        records = sequence.parse_fasta(fh)
    if not records:
        raise sequence.SequenceError(f"{what}: no FASTA records in {path}")
    if len(records) > 1:
        print(f"note: {path} has {len(records)} records; using {records[0].id!r}",
              file=sys.stderr)
    return records[0]


def cmd_index(args) -> int:
    with open(args.fasta, "r", encoding="ascii") as fh:
        records = sequence.parse_fasta(fh)
    if not records:
        raise sequence.SequenceError(f"no FASTA records in {args.fasta}")
    if len(records) > 1:
        print(f"error: {args.fasta} holds {len(records)} records; "
              "this index stores exactly one sequence (compare sequences "
              "with the overlap command instead)", file=sys.stderr)
        return EXIT_BAD_CONTENT
    text = sequence.encode(records[0])
    t0 = time.perf_counter()
    if args.engine == "parallel":
        sa = parallel_sort.parallel_build_sa(text, _sort_config(args))
    else:
        sa = suffix_index.build_sa_dc3(text)
    engine = overlap.LcpQueryEngine.build(text, sa=sa)
    elapsed = time.perf_counter() - t0
    out = args.out or args.fasta + ".saix"
    index_store.save_index(engine, out)
    print(f"indexed n={text.n} sigma={text.sigma} in {elapsed:.3f}s")
    if args.verbose:
        print(f"wrote {out}", file=sys.stderr)
    return EXIT_OK


def cmd_query(args) -> int:
    engine = index_store.load_index(args.index)
    try:
        length = overlap.lcp_query(engine, args.i, args.j)
    except IndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_QUERY
    prefix = sequence.decode(engine.text)[args.i:args.i + length]
    print(length)
    print(prefix)
    return EXIT_OK


def cmd_overlap(args) -> int:
    rec_a = _read_first_record(args.fasta_a, "A")
    rec_b = _read_first_record(args.fasta_b, "B")
    result = overlap.longest_overlap(rec_a, rec_b)
    human, payload = overlap.overlap_report(result, rec_a, rec_b)
    if args.verbose:
        print(human, file=sys.stderr)
    print(payload)
    return EXIT_OK


def cmd_bench(args) -> int:
    config = _sort_config(args)
    sizes = args.sizes or list(bench.DEFAULT_SIZES)
    seeds = args.seeds or [args.seed]
    impls = [s.strip() for s in args.impls.split(",") if s.strip()]

    def progress(rec):
        print(f"{rec.label:>13}  n={rec.n:<8} seed={rec.seed:<3} "
              f"median={rec.seconds:.6f}s", file=sys.stderr)

    records = bench.run_bench(sizes, seeds, config, repetitions=args.reps,
                              implementations=impls,
                              progress=progress if args.verbose else None)
    rows = bench.speedups_from_records(records)
    records_path = args.out
    speedup_path = os.path.splitext(args.out)[0] + ".speedup.csv"
    bench.write_csv(records, rows, records_path, speedup_path)

    print(f"{'label':>13} {'n':>8} {'seed':>5} {'chunk32':>8} {'median s':>12}")
    for rec in sorted(records, key=lambda r: (r.label, r.n, r.seed)):
        print(f"{rec.label:>13} {rec.n:>8} {rec.seed:>5} "
              f"{str(rec.chunk32).lower():>8} {rec.seconds:>12.6f}")
    for row in rows:
        print(f"speedup n={row.n}: {row.baseline} / {row.subject} = {row.ratio:.2f}")
    for note in bench.advisories(records):
        print(note, file=sys.stderr)
    print(f"wrote {records_path} and {speedup_path}")
    return EXIT_OK


def _fixture_text() -> sequence.RankedText:
    return sequence.encode(sequence.DnaSequence("fixture", "ATTGCTAC"))


def _check_sa_fixture():
    text = _fixture_text()
    want = [6, 0, 7, 4, 3, 5, 2, 1]
    assert suffix_index.build_sa_oracle(text).sa.tolist() == want, "oracle"
    assert suffix_index.build_sa_dc3(text).sa.tolist() == want, "serial"
    got = parallel_sort.parallel_build_sa(text, parallel_sort.SortConfig())
    assert got.sa.tolist() == want, "parallel"


def _check_sample_ranks():
    assert suffix_index.sample_ranks(_fixture_text()) == {1: 5, 2: 4, 4: 2, 5: 3, 7: 1}


def _check_final_ranks():
    got = (suffix_index.build_sa_dc3(_fixture_text()).rank + 1).tolist()
    assert got == [2, 8, 7, 5, 4, 6, 1, 3], got


def _check_lcp_fixture():
    text = _fixture_text()
    got = suffix_index.build_lcp(text, suffix_index.build_sa_dc3(text)).lcp.tolist()
    assert got == [0, 1, 0, 1, 0, 0, 1, 1], got


def _check_split_fixture():
    out, state = parallel_sort.split_by_bit([0b001, 0b100, 0b111, 0b101, 0b110], 0)
    assert state.zero_flags.tolist() == [0, 1, 0, 0, 1], "flag table"
    assert state.scanned.tolist() == [0, 0, 1, 1, 1], "scan"
    assert state.zero_total == 2, "zero total"
    assert out.tolist() == [0b100, 0b110, 0b001, 0b111, 0b101], "stable order"


def _check_rmq_agreement():
    rng = np.random.default_rng(20240601)
    for _ in range(40):
        n = int(rng.integers(1, 64))
        values = rng.integers(0, 8, size=n)
        st = rmq.SparseTable(values)
        ct = rmq.CartesianRmq(values)
        for i in range(n):
            for j in range(i, n):
                window = values[i:j + 1]
                want = i + int(np.flatnonzero(window == window.min())[0])
                assert st.query(i, j) == want, (values.tolist(), i, j)
                assert ct.query(i, j) == want, (values.tolist(), i, j)


SELFTEST_CHECKS = (
    ("suffix-array-fixture", _check_sa_fixture),
    ("sample-rank-fixture", _check_sample_ranks),
    ("final-rank-fixture", _check_final_ranks),
    ("lcp-fixture", _check_lcp_fixture),
    ("split-bit0-fixture", _check_split_fixture),
    ("rmq-agreement", _check_rmq_agreement),
)


def cmd_selftest(args) -> int:
    failures = 0
    for name, check in SELFTEST_CHECKS:
        try:
            check()
        except AssertionError as exc:
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"PASS {name}")
    if failures:
        print(f"{failures} of {len(SELFTEST_CHECKS)} fixtures failed",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="saix",
        description="Suffix-array indexing and overlap search for DNA sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_engine_flags(p):
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                       help="worker count for the parallel engine")
        p.add_argument("--chunk", type=int, default=4096,
                       help="chunk size for the parallel engine")
        p.add_argument("--digit-bits", type=int, default=1, dest="digit_bits",
                       help="radix digit width in bits")

    p = sub.add_parser("index", help="build a .saix index from a FASTA file")
    p.add_argument("fasta")
    p.add_argument("--out", help="output path (default: FASTA path + .saix)")
    p.add_argument("--engine", choices=("serial", "parallel"), default="serial")
    p.add_argument("-v", "--verbose", action="store_true")
    add_engine_flags(p)
    p.set_defaults(fn=cmd_index)

    p = sub.add_parser("query", help="longest common prefix of two suffixes")
    p.add_argument("index")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("overlap", help="longest overlap region of two sequences")
    p.add_argument("fasta_a")
    p.add_argument("fasta_b")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(fn=cmd_overlap)

    p = sub.add_parser("bench", help="time serial vs parallel construction")
    p.add_argument("--sizes", type=int, nargs="*", default=None)
    p.add_argument("--seeds", type=int, nargs="*", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=bench.DEFAULT_REPETITIONS)
    p.add_argument("--impls", default="serial-dc3,parallel-dc3",
                   help="comma-separated labels: serial-dc3,parallel-dc3,oracle")
    p.add_argument("--out", default="bench.csv")
    p.add_argument("-v", "--verbose", action="store_true")
    add_engine_flags(p)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("selftest", help="run the built-in fixture suite")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except (sequence.SequenceError, index_store.IndexFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONTENT
    except bench.BenchMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERIC


if __name__ == "__main__":
    sys.exit(main())
