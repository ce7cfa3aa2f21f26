"""Release acceptance suite: one test per criterion, pass/fail printed.

Run with `pytest tests/test_acceptance.py -v -s` to stream the lines.
The timing-sensitive checks follow the bench module's methodology
(warmup discarded, median of repeated runs).
"""

import functools
import io
import random
import time

import numpy as np
import pytest

import oracles
from saix import bench, index_store, rmq
from saix.overlap import LcpQueryEngine, lcp_query, longest_overlap
from saix.parallel_sort import SortConfig, parallel_build_sa, split_by_bit
from saix.sequence import DnaSequence, RankedText, encode, gen_random
from saix.suffix_index import (build_lcp, build_sa_dc3, build_sa_oracle,
                               sample_ranks)

FIXTURE = encode(DnaSequence("fixture", "ATTGCTAC"))
FIXTURE_SA = [6, 0, 7, 4, 3, 5, 2, 1]

# engine settings used where a criterion just needs "the parallel builder"
FAST_PARALLEL = SortConfig(digit_bits=8, total_bits=32, chunk_size=16384,
                           workers=1)
LITERAL_PARALLEL = SortConfig(digit_bits=1, total_bits=32, chunk_size=4096,
                              workers=2)


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"acceptance: {name:<42} FAIL", flush=True)
                raise
            print(f"acceptance: {name:<42} PASS", flush=True)
        return wrapper
    return decorate


def median_time(fn, reps=5):
    fn()  # warmup, discarded
    laps = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        laps.append(time.perf_counter() - t0)
    return sorted(laps)[len(laps) // 2]


def exhaustive_texts(k):
    """All 4**k rank rows of length k, values 1..4."""
    codes = np.arange(4 ** k, dtype=np.int64)[:, None]
    return (codes // (4 ** np.arange(k, dtype=np.int64))[None, :]) % 4 + 1


@pytest.fixture(scope="module")
def random_corpus():
    rng = random.Random(20240601)
    texts = []
    for _ in range(1000):
        n = rng.randrange(1, 10_001)
        texts.append(encode(gen_random(n, rng.randrange(1 << 62))))
    return texts


@criterion("suffix array fixture, three builders, <1ms")
def test_01_suffix_array_fixture():
    assert build_sa_oracle(FIXTURE).sa.tolist() == FIXTURE_SA
    assert build_sa_dc3(FIXTURE).sa.tolist() == FIXTURE_SA
    assert parallel_build_sa(FIXTURE, FAST_PARALLEL).sa.tolist() == FIXTURE_SA
    for builder in (build_sa_oracle, build_sa_dc3,
                    lambda t: parallel_build_sa(t, FAST_PARALLEL)):
        builder(FIXTURE)
        best = min(median_time(lambda: builder(FIXTURE), reps=3)
                   for _ in range(3))
        assert best < 1e-3, f"{best * 1e3:.3f} ms"


@criterion("sample rank fixture")
def test_02_sample_ranks_fixture():
    assert sample_ranks(FIXTURE) == {1: 5, 2: 4, 4: 2, 5: 3, 7: 1}


@criterion("rank array fixture (1-based)")
def test_03_rank_array_fixture():
    assert (build_sa_dc3(FIXTURE).rank + 1).tolist() == [2, 8, 7, 5, 4, 6, 1, 3]


@criterion("lcp array fixture")
def test_04_lcp_fixture():
    got = build_lcp(FIXTURE, build_sa_dc3(FIXTURE)).lcp.tolist()
    assert got == [0, 1, 0, 1, 0, 0, 1, 1]


@criterion("split primitive fixture, bit 0")
def test_05_split_fixture():
    out, state = split_by_bit([0b001, 0b100, 0b111, 0b101, 0b110], 0)
    assert state.zero_flags.tolist() == [0, 1, 0, 0, 1]
    assert state.scanned.tolist() == [0, 0, 1, 1, 1]
    assert state.zero_total == 2
    assert out.tolist() == [0b100, 0b110, 0b001, 0b111, 0b101]
    assert state.dest.tolist() == [2, 0, 3, 4, 1]


@criterion("oracle equivalence, exhaustive + random, <60s")
def test_06_oracle_equivalence(random_corpus):
    t0 = time.perf_counter()
    for k in range(1, 9):
        for row in exhaustive_texts(k):
            text = RankedText(ranks=row, sigma=4)
            want = build_sa_oracle(text).sa
            assert np.array_equal(build_sa_dc3(text).sa, want)
            assert np.array_equal(parallel_build_sa(text, FAST_PARALLEL).sa,
                                  want)
    assert np.array_equal(build_sa_dc3(encode(DnaSequence("e", ""))).sa,
                          build_sa_oracle(encode(DnaSequence("e", ""))).sa)
    for text in random_corpus:
        want = build_sa_oracle(text).sa
        assert np.array_equal(build_sa_dc3(text).sa, want)
        assert np.array_equal(parallel_build_sa(text, FAST_PARALLEL).sa, want)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"{elapsed:.1f}s"


@criterion("lcp construction equals naive oracle")
def test_07_lcp_oracle(random_corpus):
    for k in range(1, 9):
        for row in exhaustive_texts(k):
            text = RankedText(ranks=row, sigma=4)
            sa = build_sa_dc3(text)
            assert (build_lcp(text, sa).lcp.tolist()
                    == oracles.naive_lcp_array(row.tolist(), sa.sa.tolist()))
    for text in random_corpus:
        sa = build_sa_dc3(text)
        ranks = text.ranks.tolist()
        assert (build_lcp(text, sa).lcp.tolist()
                == oracles.naive_lcp_array(ranks, sa.sa.tolist()))


@criterion("rmq triple agreement, exhaustive + sampled")
def test_08_rmq_triple_agreement():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randrange(1, 65)
        vals = [rng.randrange(0, 10) for _ in range(n)]
        st = rmq.SparseTable(vals)
        ct = rmq.CartesianRmq(vals)
        for i in range(n):
            for j in range(i, n):
                want = oracles.scan_argmin(vals, i, j)
                assert st.query(i, j) == want
                assert ct.query(i, j) == want
    n = 100_000
    vals = [rng.randrange(0, 40) for _ in range(n)]
    st = rmq.SparseTable(vals)
    ct = rmq.CartesianRmq(vals)
    for _ in range(10_000):
        i, j = rng.randrange(n), rng.randrange(n)
        want = oracles.scan_argmin(vals, i, j)
        assert st.query(i, j) == want
        assert ct.query(i, j) == want


@criterion("lcp_query equals direct comparison, 10^4 pairs")
def test_09_lcp_query_oracle():
    rng = random.Random(9)
    queries = 0
    while queries < 10_000:
        s = oracles.random_dna(rng, rng.randrange(1, 4001))
        engine = LcpQueryEngine.build(encode(DnaSequence("t", s)))
        for _ in range(400):
            i, j = rng.randrange(len(s)), rng.randrange(len(s))
            assert lcp_query(engine, i, j) == oracles.naive_lcp_pair(s, i, j)
            queries += 1


@criterion("longest overlap equals DP oracle, 200 pairs")
def test_10_longest_overlap_oracle():
    rng = random.Random(10)
    for _ in range(200):
        sa_ = oracles.random_dna(rng, rng.randrange(0, 301))
        sb_ = oracles.random_dna(rng, rng.randrange(0, 301))
        a, b = DnaSequence("a", sa_), DnaSequence("b", sb_)
        got = longest_overlap(a, b)
        want_len, _, _ = oracles.lcs_dp(sa_, sb_)
        assert got.length == want_len
        assert (sa_[got.pos_a:got.pos_a + got.length]
                == sb_[got.pos_b:got.pos_b + got.length])


@criterion("parallel determinism across workers and chunks")
def test_11_parallel_determinism():
    text = encode(gen_random(100_000, 11))
    want = build_sa_dc3(text).sa
    for chunk in (31, 32, 4096):
        for workers in (1, 2, 4, 8):
            cfg = SortConfig(digit_bits=1, total_bits=32, chunk_size=chunk,
                             workers=workers)
            got = parallel_build_sa(text, cfg).sa
            assert np.array_equal(got, want), (chunk, workers)


@criterion("speedup arithmetic reproduction")
def test_12_speedup_arithmetic():
    base = bench.BenchRecord(label="serial-dc3", n=1048576, seed=0,
                             chunk32=True, reps=5, seconds=98.253)
    subj = bench.BenchRecord(label="parallel-dc3", n=1048576, seed=0,
                             chunk32=True, reps=5, seconds=8.335)
    assert bench.compute_speedup(base, subj).ratio == pytest.approx(11.79,
                                                                    abs=0.01)
    slow = bench.compute_speedup(
        bench.BenchRecord(label="serial-dc3", n=256, seed=0, chunk32=True,
                          reps=5, seconds=0.001),
        bench.BenchRecord(label="parallel-dc3", n=256, seed=0, chunk32=True,
                          reps=5, seconds=0.002))
    assert slow.ratio == 0.50


@criterion("scaling: ladder, serial growth, worker overhead")
def test_13_scaling():
    failures = []

    t0 = time.perf_counter()
    ladder = bench.run_bench(bench.DEFAULT_SIZES, [0], LITERAL_PARALLEL,
                             repetitions=5)
    ladder_wall = time.perf_counter() - t0
    assert len(ladder) == 2 * len(bench.DEFAULT_SIZES)
    print(f"  ladder wall time: {ladder_wall:.0f}s (limit 600s)")
    if ladder_wall > 600.0:
        failures.append(f"ladder took {ladder_wall:.0f}s > 600s")

    extra = bench.run_bench([2 ** 17], [0], LITERAL_PARALLEL, repetitions=5,
                            implementations=["serial-dc3"])
    t17 = extra[0].seconds
    t20 = next(r.seconds for r in ladder
               if r.label == "serial-dc3" and r.n == 2 ** 20)
    print(f"  serial growth: 2^17 {t17:.4f}s, 2^20 {t20:.4f}s, "
          f"ratio {t20 / t17:.2f} (limit 8.00)")
    if t20 > 8.0 * t17:
        failures.append(f"serial 2^20/2^17 ratio {t20 / t17:.2f} > 8")

    text = encode(gen_random(2 ** 20, 13))
    cfg1 = SortConfig(digit_bits=1, total_bits=32, chunk_size=4096, workers=1)
    cfg4 = SortConfig(digit_bits=1, total_bits=32, chunk_size=4096, workers=4)
    t_one = median_time(lambda: parallel_build_sa(text, cfg1), reps=5)
    t_four = median_time(lambda: parallel_build_sa(text, cfg4), reps=5)
    print(f"  workers=1 {t_one:.2f}s, workers=4 {t_four:.2f}s "
          f"(limit 1.10x)")
    if t_four > 1.10 * t_one:
        failures.append(f"workers=4 {t_four:.2f}s > 1.10 x {t_one:.2f}s")

    assert not failures, "; ".join(failures)


@criterion("index round trip + corruption detection, 100 engines")
def test_14_index_roundtrip():
    rng = random.Random(14)
    for _ in range(100):
        n = rng.randrange(0, 400)
        engine = LcpQueryEngine.build(encode(gen_random(n, rng.randrange(1 << 31))))
        sink = io.BytesIO()
        index_store.save_index(engine, sink)
        blob = sink.getvalue()
        loaded = index_store.load_index(io.BytesIO(blob))
        assert loaded.text == engine.text
        assert np.array_equal(loaded.sa.sa, engine.sa.sa)
        assert np.array_equal(loaded.lcp.lcp, engine.lcp.lcp)
        if n:
            corrupt = bytearray(blob)
            pos = rng.randrange(40, len(blob) - 8)  # inside text/sa/lcp
            corrupt[pos] ^= 1 + rng.randrange(255)
            with pytest.raises(index_store.ChecksumError):
                index_store.load_index(io.BytesIO(bytes(corrupt)))
