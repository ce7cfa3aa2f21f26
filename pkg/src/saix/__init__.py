"""saix: suffix-array indexing for DNA sequences.

Builds suffix arrays (DC3, serial or via a bulk-synchronous radix sort
engine), LCP arrays, and constant-time RMQ structures; answers
longest-common-prefix and longest-overlap queries; persists indexes to
".saix" files; and benchmarks serial against parallel construction.
"""

from .bench import (BenchMismatchError, BenchRecord, SpeedupRow,
                    compute_speedup, run_bench, write_csv)
from .index_store import (BadMagicError, ChecksumError, IndexFileError,
                          TruncatedFileError, UnsupportedVersionError,
                          load_index, save_index)
from .overlap import (GeneralizedText, LcpQueryEngine, OverlapResult,
                      lcp_query, longest_overlap, overlap_report)
from .parallel_sort import (ChunkPlan, SortConfig, SplitState, chunked_sort,
                            exclusive_scan, parallel_build_sa, plan_chunks,
                            radix_sort, split_by_bit)
from .rmq import (CartesianRmq, CartesianTree, EulerTour, PlusMinusOneRmq,
                  SparseTable, build_cartesian, build_pm1, build_sparse,
                  euler_tour, query_pm1, query_sparse, rmq_via_lca)
from .sequence import (DnaSequence, NPolicy, RankedText, SequenceError,
                       decode, encode, gen_random, parse_fasta, write_fasta)
from .suffix_index import (Dc3Workspace, LcpArray, SuffixArray, build_lcp,
                           build_sa_dc3, build_sa_oracle,
                           merge_sample_nonsample, prepare_dc3_workspace,
                           sample_ranks)

__version__ = "0.1.0"

__all__ = [
    "BadMagicError", "BenchMismatchError", "BenchRecord", "CartesianRmq",
    "CartesianTree", "ChecksumError", "ChunkPlan", "Dc3Workspace",
    "DnaSequence", "EulerTour", "GeneralizedText", "IndexFileError",
    "LcpArray", "LcpQueryEngine", "NPolicy", "OverlapResult",
    "PlusMinusOneRmq", "RankedText", "SequenceError", "SortConfig",
    "SparseTable", "SpeedupRow", "SplitState", "SuffixArray",
    "TruncatedFileError", "UnsupportedVersionError", "build_cartesian",
    "build_lcp", "build_pm1", "build_sa_dc3", "build_sa_oracle",
    "build_sparse", "chunked_sort", "compute_speedup", "decode", "encode",
    "euler_tour", "exclusive_scan", "gen_random", "lcp_query", "load_index",
    "longest_overlap", "merge_sample_nonsample", "overlap_report",
    "parallel_build_sa", "parse_fasta", "plan_chunks", "prepare_dc3_workspace",
    "query_pm1", "query_sparse", "radix_sort", "rmq_via_lca", "run_bench",
    "sample_ranks", "save_index", "split_by_bit", "write_csv", "write_fasta",
]
