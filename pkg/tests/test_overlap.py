import json
import random

import numpy as np
import pytest

import oracles
from saix.overlap import (GeneralizedText, LcpQueryEngine, OverlapResult,
                          lcp_query, longest_overlap, overlap_report,
                          parse_overlap_record)
from saix.sequence import DnaSequence, encode

A_FIX = DnaSequence("A", "ATTGCTAC")
B_FIX = DnaSequence("B", "GCTA")


def engine_for(s, kind="sparse"):
    return LcpQueryEngine.build(encode(DnaSequence("t", s)), rmq_kind=kind)


class TestLcpQuery:
    def test_fixture_pair(self):
        assert lcp_query(engine_for("ATTGCTAC"), 6, 0) == 1

    def test_self_query_is_remaining_length(self):
        assert lcp_query(engine_for("ATTGCTAC"), 3, 3) == 5

    def test_symmetry(self):
        eng = engine_for("ATTGCTAC")
        for i in range(8):
            for j in range(8):
                assert lcp_query(eng, i, j) == lcp_query(eng, j, i)

    def test_bounds(self):
        eng = engine_for("ACGT")
        with pytest.raises(IndexError):
            lcp_query(eng, 0, 4)
        with pytest.raises(IndexError):
            lcp_query(eng, -1, 0)

    @pytest.mark.parametrize("kind", ["sparse", "cartesian"])
    def test_matches_naive_comparison(self, kind):
        rng = random.Random(8)
        for _ in range(25):
            s = oracles.random_dna(rng, rng.randrange(1, 500))
            eng = engine_for(s, kind)
            for _ in range(60):
                i, j = rng.randrange(len(s)), rng.randrange(len(s))
                want = oracles.naive_lcp_pair(s, i, j)
                got = lcp_query(eng, i, j)
                assert got == want, (s, i, j)
                assert got <= min(len(s) - i, len(s) - j)

    def test_exhaustive_small(self):
        rng = random.Random(9)
        for _ in range(30):
            s = oracles.random_dna(rng, rng.randrange(1, 60))
            eng = engine_for(s)
            for i in range(len(s)):
                for j in range(len(s)):
                    assert lcp_query(eng, i, j) == oracles.naive_lcp_pair(s, i, j)

    def test_unknown_rmq_kind(self):
        with pytest.raises(ValueError):
            engine_for("ACGT", kind="nope")


class TestGeneralizedText:
    def test_separator_sits_at_boundary_once(self):
        gen = GeneralizedText.build(A_FIX, B_FIX)
        ranks = gen.ranks.tolist()
        assert gen.boundary == 8
        assert ranks[8] == 1
        assert ranks.count(1) == 1
        assert gen.len_a == 8 and gen.len_b == 4
        assert len(ranks) == 13

    def test_residue_ranks_shifted_above_separator(self):
        gen = GeneralizedText.build(A_FIX, B_FIX)
        ranks = np.delete(gen.ranks, gen.boundary)
        assert ranks.min() >= 2
        assert gen.sigma == 5


class TestLongestOverlap:
    def test_fixture(self):
        got = longest_overlap(A_FIX, B_FIX)
        assert got == OverlapResult(4, 3, 0)
        assert A_FIX.residues[3:7] == B_FIX.residues[0:4] == "GCTA"

    def test_disjoint_alphabets(self):
        got = longest_overlap(DnaSequence("a", "AAAA"), DnaSequence("b", "TTTT"))
        assert got == OverlapResult(0, 0, 0)

    def test_empty_inputs(self):
        assert longest_overlap(DnaSequence("a", ""), B_FIX) == OverlapResult(0, 0, 0)
        assert longest_overlap(A_FIX, DnaSequence("b", "")) == OverlapResult(0, 0, 0)

    def test_matches_dp_oracle_exactly(self):
        rng = random.Random(10)
        for _ in range(150):
            sa = oracles.random_dna(rng, rng.randrange(0, 80))
            sb = oracles.random_dna(rng, rng.randrange(0, 80))
            got = longest_overlap(DnaSequence("a", sa), DnaSequence("b", sb))
            assert (got.length, got.pos_a, got.pos_b) == oracles.lcs_dp(sa, sb)

    def test_length_symmetric(self):
        rng = random.Random(11)
        for _ in range(40):
            a = DnaSequence("a", oracles.random_dna(rng, rng.randrange(0, 70)))
            b = DnaSequence("b", oracles.random_dna(rng, rng.randrange(0, 70)))
            assert longest_overlap(a, b).length == longest_overlap(b, a).length

    def test_result_substring_verifies_by_slicing(self):
        rng = random.Random(12)
        for _ in range(40):
            a = DnaSequence("a", oracles.random_dna(rng, rng.randrange(1, 90)))
            b = DnaSequence("b", oracles.random_dna(rng, rng.randrange(1, 90)))
            r = longest_overlap(a, b)
            assert (a.residues[r.pos_a:r.pos_a + r.length]
                    == b.residues[r.pos_b:r.pos_b + r.length])

    def test_shared_block_monotonicity(self):
        rng = random.Random(13)
        for _ in range(25):
            a = oracles.random_dna(rng, rng.randrange(0, 50))
            b = oracles.random_dna(rng, rng.randrange(0, 50))
            block = oracles.random_dna(rng, rng.randrange(1, 30))
            got = longest_overlap(DnaSequence("a", a + block),
                                  DnaSequence("b", b + block))
            assert got.length >= len(block)


class TestOverlapReport:
    def test_fixture_record(self):
        result = longest_overlap(A_FIX, B_FIX)
        human, payload = overlap_report(result, A_FIX, B_FIX)
        assert json.loads(payload) == {"length": 4, "posA": 3, "posB": 0,
                                       "substring": "GCTA"}
        assert "GCTA" in human

    def test_zero_length_record(self):
        result = OverlapResult(0, 0, 0)
        _, payload = overlap_report(result, DnaSequence("a", "AA"),
                                    DnaSequence("b", "TT"))
        assert json.loads(payload)["substring"] == ""

    def test_roundtrip(self):
        result = longest_overlap(A_FIX, B_FIX)
        _, payload = overlap_report(result, A_FIX, B_FIX)
        assert parse_overlap_record(payload) == result

    def test_mismatched_inputs_rejected(self):
        with pytest.raises(ValueError):
            overlap_report(OverlapResult(2, 0, 0), DnaSequence("a", "AC"),
                           DnaSequence("b", "GT"))
