"""Constant-time range-minimum queries over a static integer array.

Two interchangeable engines answer argmin(values[i..j]) (inclusive range,
leftmost index on ties):

  * SparseTable: O(n log n) table of window minima, one comparison per query.
  * CartesianRmq: the classic reduction chain. A min-heap Cartesian tree
    turns range minima into lowest common ancestors; an Euler tour of the
    tree yields a depth array whose adjacent entries differ by exactly 1;
    that restricted array admits O(n)-preprocessing O(1)-query RMQ by
    typing fixed-size blocks and tabulating all in-block answers per type.

Both engines agree query-for-query; the sparse table is the default used
elsewhere, the Cartesian pipeline exists for parity and is selectable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _check_range(n: int, i: int, j: int) -> tuple[int, int]:
    if not (0 <= i < n) or not (0 <= j < n):
        raise IndexError(f"query ({i}, {j}) out of bounds for length {n}")
    return (i, j) if i <= j else (j, i)


class SparseTable:
    """Indices of window minima for every power-of-two window width."""

    def __init__(self, values):
        values = np.asarray(values, dtype=np.int64)
        if len(values) == 0:
            raise ValueError("cannot build a sparse table over an empty array")
        self.values = values
        n = len(values)
        levels = max(1, n.bit_length())
        table = [np.arange(n, dtype=np.int64)]
        for k in range(1, levels):
            half = 1 << (k - 1)
            prev = table[-1]
            if n - (1 << k) + 1 <= 0:
                break
            left = prev[: n - (1 << k) + 1]
            right = prev[half: half + len(left)]
            table.append(np.where(self.values[left] <= self.values[right],
                                  left, right))
        self.table = table

    def query(self, i: int, j: int) -> int:
        i, j = _check_range(len(self.values), i, j)
        span = j - i + 1
        k = span.bit_length() - 1
        a = int(self.table[k][i])
        b = int(self.table[k][j - (1 << k) + 1])
        return a if self.values[a] <= self.values[b] else b


@dataclass
class CartesianTree:
    """Min-heap binary tree whose in-order traversal is 0..n-1.

    Ties break so the leftmost minimum becomes the ancestor.
    """

    values: np.ndarray
    parent: np.ndarray
    left: np.ndarray
    right: np.ndarray
    root: int


@dataclass
class EulerTour:
    """Depth-first tour of a Cartesian tree.

    tour_nodes lists the node visited at each tour step (2n-1 steps:
    once on entry plus once per return from a child); tour_depths the
    node depths, which change by exactly +-1 per step; first_visit[v]
    is the earliest tour position of node v.
    """

    tour_nodes: np.ndarray
    tour_depths: np.ndarray
    first_visit: np.ndarray


def build_cartesian(values) -> CartesianTree:
    """O(n) rightmost-spine construction; each node pushed and popped once."""
    values = np.asarray(values, dtype=np.int64)
    n = len(values)
    if n == 0:
        raise ValueError("cannot build a Cartesian tree over an empty array")
    vals = values.tolist()
    parent = [-1] * n
    left = [-1] * n
    right = [-1] * n
    stack: list[int] = []
    for i in range(n):
        last = -1
        while stack and vals[stack[-1]] > vals[i]:
            last = stack.pop()
        if last != -1:
            left[i] = last
            parent[last] = i
        if stack:
            right[stack[-1]] = i
            parent[i] = stack[-1]
        stack.append(i)
    return CartesianTree(
        values=values,
        parent=np.asarray(parent, dtype=np.int64),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        root=stack[0],
    )


def euler_tour(tree: CartesianTree) -> EulerTour:
    """Iterative DFS emitting a node on entry and after each child returns."""
    n = len(tree.values)
    size = 2 * n - 1
    nodes = np.empty(size, dtype=np.int64)
    depths = np.empty(size, dtype=np.int64)
    first = np.full(n, -1, dtype=np.int64)
    left = tree.left.tolist()
    right = tree.right.tolist()

    pos = 0
    # stack entries: (node, depth, next child to descend: 0=left, 1=right, 2=done)
    stack = [(tree.root, 0, 0)]
    while stack:
        node, depth, phase = stack.pop()
        nodes[pos] = node
        depths[pos] = depth
        if first[node] < 0:
            first[node] = pos
        pos += 1
        if phase == 0:
            if left[node] >= 0:
                stack.append((node, depth, 1))
                stack.append((left[node], depth + 1, 0))
                continue
            phase = 1
        if phase == 1:
            if right[node] >= 0:
                stack.append((node, depth, 2))
                stack.append((right[node], depth + 1, 0))
    # a node with c children is emitted c+1 times, so pos lands at 2n-1
    assert pos == size
    return EulerTour(tour_nodes=nodes, tour_depths=depths, first_visit=first)


class PlusMinusOneRmq:
    """O(1) RMQ over an array whose adjacent entries differ by exactly 1.

    The array splits into blocks of b = max(1, floor(log2 m / 2)). The
    +-1 step pattern (padded with ascents past the real end) determines
    every in-block answer, so blocks sharing a pattern share one lookup
    table. Block minima feed a sparse table for the spans between blocks.
    """

    def __init__(self, depths):
        depths = np.asarray(depths, dtype=np.int64)
        m = len(depths)
        if m == 0:
            raise ValueError("cannot build over an empty array")
        if m > 1:
            steps = np.abs(np.diff(depths))
            if steps.min() != 1 or steps.max() != 1:
                raise ValueError("adjacent entries must differ by exactly 1")
        self.depths = depths
        self.block = max(1, (m.bit_length() - 1) // 2)
        b = self.block
        nblocks = (m + b - 1) // b

        pad = nblocks * b - m
        padded = np.concatenate([depths, depths[-1] + 1 + np.arange(pad)])
        grid = padded.reshape(nblocks, b)
        self.block_argmin = np.argmin(grid, axis=1)  # leftmost within block
        self.block_min = grid[np.arange(nblocks), self.block_argmin]
        self.block_sparse = SparseTable(self.block_min)

        # type code: bit k set when the step after offset k descends
        if b > 1:
            desc = (np.diff(grid, axis=1) < 0).astype(np.int64)
            self.types = (desc << np.arange(b - 1)).sum(axis=1)
        else:
            self.types = np.zeros(nblocks, dtype=np.int64)
        self.inblock: dict[int, np.ndarray] = {}
        for code in np.unique(self.types):
            self.inblock[int(code)] = self._table_for(int(code), b)

    @staticmethod
    def _table_for(code: int, b: int) -> np.ndarray:
        """argmin table over the simulated walk for one step pattern."""
        walk = [0]
        for k in range(b - 1):
            walk.append(walk[-1] + (-1 if (code >> k) & 1 else 1))
        table = np.zeros((b, b), dtype=np.int64)
        for i in range(b):
            best = i
            table[i, i] = i
            for j in range(i + 1, b):
                if walk[j] < walk[best]:
                    best = j
                table[i, j] = best
        return table

    def _inblock_query(self, blk: int, lo: int, hi: int) -> int:
        table = self.inblock[int(self.types[blk])]
        return blk * self.block + int(table[lo, hi])

    def query(self, i: int, j: int) -> int:
        i, j = _check_range(len(self.depths), i, j)
        b = self.block
        bi, bj = i // b, j // b
        if bi == bj:
            return self._inblock_query(bi, i - bi * b, j - bj * b)
        # candidates in positional order keep ties resolving leftmost
        best = self._inblock_query(bi, i - bi * b, b - 1)
        if bi + 1 <= bj - 1:
            mid_blk = self.block_sparse.query(bi + 1, bj - 1)
            mid = mid_blk * b + int(self.block_argmin[mid_blk])
            if self.depths[mid] < self.depths[best]:
                best = mid
        right = self._inblock_query(bj, 0, j - bj * b)
        if self.depths[right] < self.depths[best]:
            best = right
        return best


class CartesianRmq:
    """Range minima answered as LCAs: tree + tour + +-1 RMQ, built once."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.int64)
        self.tree = build_cartesian(self.values)
        self.tour = euler_tour(self.tree)
        self.pm1 = PlusMinusOneRmq(self.tour.tour_depths)

    def query(self, i: int, j: int) -> int:
        i, j = _check_range(len(self.values), i, j)
        a = int(self.tour.first_visit[i])
        b = int(self.tour.first_visit[j])
        if a > b:
            a, b = b, a
        k = self.pm1.query(a, b)
        return int(self.tour.tour_nodes[k])


def build_sparse(values) -> SparseTable:
    return SparseTable(values)


def query_sparse(st: SparseTable, i: int, j: int) -> int:
    return st.query(i, j)


def build_pm1(depths) -> PlusMinusOneRmq:
    return PlusMinusOneRmq(depths)


def query_pm1(structure: PlusMinusOneRmq, i: int, j: int) -> int:
    return structure.query(i, j)


def rmq_via_lca(values, i: int, j: int) -> int:
    """One-shot build-and-query through the Cartesian pipeline."""
    return CartesianRmq(values).query(i, j)
