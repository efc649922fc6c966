"""Combinatorial number system machinery for the OFDM-IM index selector.

A k-subset of subcarriers {0, ..., n-1} is written as a strictly decreasing
tuple ``(c_k, ..., c_1)`` and identified with the integer
``x = C(c_k, k) + ... + C(c_1, 1)``.  Ranks run over ``[0, C(n, k))`` in
colexicographic order.

Three selectors turn a rank back into a pattern:

* :func:`unrank_baseline` evaluates every binomial from scratch, O(k^2)
  multiplications per call.
* :func:`unrank_pt` reads every binomial from a :class:`PascalTable`,
  O(n + k) table reads per call.
* :class:`FullLut` stores the answer for every rank below ``2**p1``.
"""

from __future__ import annotations

import math
import struct
import sys
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionError, PatternError, RankOutOfRange, TableCapacityError

__all__ = [
    "IndexPattern",
    "PascalTable",
    "FullLut",
    "DEFAULT_LUT_CAP",
    "binomial_multiplicative",
    "build_pascal_table",
    "pascal_table_nbytes",
    "unrank_baseline",
    "unrank_pt",
    "rank",
    "check_pattern",
    "colex_patterns",
    "index_bits",
    "build_full_lut",
]

#: Strictly decreasing active-subcarrier indices ``(c_k, ..., c_1)``.
IndexPattern = tuple

DEFAULT_LUT_CAP = 2**24


def binomial_multiplicative(c: int, i: int) -> int:
    """C(c, i) by the running product of (c - j + 1) / j, j = 1..i.

    Each partial product is itself a binomial coefficient, so multiplying
    before dividing keeps every intermediate exact.
    """
    if c < 0 or i < 0:
        raise ValueError(f"binomial arguments must be nonnegative, got ({c}, {i})")
    if c < i:
        return 0
    r = 1
    for j in range(1, i + 1):
        r = r * (c - j + 1) // j
    return r


def index_bits(n: int, k: int) -> int:
    """Number of index bits p1 = floor(log2 C(n, k))."""
    return math.comb(n, k).bit_length() - 1


class PascalTable:
    """Immutable grid of C(c, i) for ``0 <= c < n_rows`` and ``1 <= i <= n_cols``.

    Entries are held column by column: the selector walks down one column
    before stepping left, so this keeps consecutive reads adjacent.
    """

    __slots__ = ("_n_rows", "_n_cols", "_cols")

    def __init__(self, n_rows: int, n_cols: int, cols: tuple[tuple[int, ...], ...]):
        self._n_rows = n_rows
        self._n_cols = n_cols
        # cols[0] is the implicit C(c, 0) = 1 column used by the recurrence.
        self._cols = cols

    @property
    def n_rows(self) -> int:
        return self._n_rows

    @property
    def n_cols(self) -> int:
        return self._n_cols

    @property
    def entry_count(self) -> int:
        return self._n_rows * self._n_cols

    def entry(self, c: int, i: int) -> int:
        if not (0 <= c < self._n_rows and 1 <= i <= self._n_cols):
            raise IndexError(f"entry ({c}, {i}) outside {self._n_rows}x{self._n_cols} table")
        return self._cols[i][c]

    def column(self, i: int) -> Sequence[int]:
        """Column i as a sequence indexed by row c."""
        if not 1 <= i <= self._n_cols:
            raise IndexError(f"column {i} outside 1..{self._n_cols}")
        return self._cols[i]

    def row(self, c: int) -> tuple[int, ...]:
        """Row c as ``(C(c, 1), ..., C(c, n_cols))``."""
        if not 0 <= c < self._n_rows:
            raise IndexError(f"row {c} outside 0..{self._n_rows - 1}")
        return tuple(self._cols[i][c] for i in range(1, self._n_cols + 1))

    def __repr__(self) -> str:
        return f"PascalTable(n_rows={self._n_rows}, n_cols={self._n_cols})"


def pascal_table_nbytes(n: int, k: int) -> int:
    """Estimate the resident size in bytes of ``build_pascal_table(n, k)``.

    Counts one int object per entry sized from log2 C(c, i), plus one
    pointer slot per entry.  Small cached ints are not discounted, so the
    estimate errs high.
    """
    if n < 1 or k < 1:
        return 0
    digit_bits = sys.int_info.bits_per_digit
    digit_size = sys.int_info.sizeof_digit
    header = sys.getsizeof(0)
    ptr = struct.calcsize("P")
    # log2(c!) for c = 0..n-1
    log2_fact = np.concatenate(([0.0], np.cumsum(np.log2(np.arange(1, n, dtype=np.float64)))))
    c = np.arange(n)
    total = 0.0
    for i in range(1, k + 1):
        live = c[c >= i]
        bits = log2_fact[live] - log2_fact[i] - log2_fact[live - i] + 1.0
        ndigits = np.maximum(1.0, np.ceil(bits / digit_bits))
        total += float(np.sum(header + digit_size * ndigits))
        total += (n - live.size) * (header + digit_size)
    total += ptr * n * (k + 1)
    return int(total)


def build_pascal_table(n: int, k: int, max_bytes: int | None = None) -> PascalTable:
    """Build the n x k table of C(c, i) by the additive Pascal recurrence.

    ``max_bytes`` bounds the estimated footprint; exceeding it raises
    :class:`TableCapacityError` before anything is allocated.
    """
    if n < 1 or k < 1:
        raise DimensionError(f"table dimensions must be positive, got n={n}, k={k}")
    if k > n:
        raise DimensionError(f"k={k} exceeds n={n}")
    if max_bytes is not None:
        need = pascal_table_nbytes(n, k)
        if need > max_bytes:
            raise TableCapacityError(
                f"Pascal table for n={n}, k={k} needs about {need} bytes, budget is {max_bytes}"
            )
    cols: list[tuple[int, ...]] = [(1,) * n]
    for i in range(1, k + 1):
        left = cols[i - 1]
        col = [0] * n
        # C(c, i) = C(c-1, i-1) + C(c-1, i), with C(0, i) = 0 for i >= 1
        prev = 0
        for c in range(1, n):
            prev = left[c - 1] + prev
            col[c] = prev
        cols.append(tuple(col))
    return PascalTable(n, k, tuple(cols))


def _check_rank_args(x: int, n: int, k: int) -> None:
    if n < 1 or not 1 <= k <= n:
        raise DimensionError(f"need 1 <= k <= n, got n={n}, k={k}")
    if x < 0:
        raise RankOutOfRange(f"rank must be nonnegative, got {x}")


def unrank_baseline(x: int, n: int, k: int) -> IndexPattern:
    """Index selector with every C(c_i, i) recomputed multiplicatively."""
    _check_rank_args(x, n, k)
    out = []
    candidate = n - 1
    for i in range(k, 0, -1):
        c = candidate
        b = binomial_multiplicative(c, i)
        while b > x:
            c -= 1
            b = binomial_multiplicative(c, i)
        x -= b
        out.append(c)
        candidate = c - 1
    # Any x >= C(n, k) leaves a positive remainder once c_k = n - 1.
    if x:
        raise RankOutOfRange(f"rank exceeds C({n}, {k}) - 1")
    return tuple(out)


def unrank_pt(x: int, table: PascalTable, n: int, k: int) -> IndexPattern:
    """Index selector reading each C(c_i, i) from a Pascal table."""
    _check_rank_args(x, n, k)
    if table.n_rows < n or table.n_cols < k:
        raise DimensionError(
            f"{table.n_rows}x{table.n_cols} table does not cover n={n}, k={k}"
        )
    out = []
    c = n - 1
    for i in range(k, 0, -1):
        col = table.column(i)
        b = col[c]
        while b > x:
            c -= 1
            b = col[c]
        x -= b
        out.append(c)
        c -= 1
    if x:
        raise RankOutOfRange(f"rank exceeds C({n}, {k}) - 1")
    return tuple(out)


def check_pattern(pattern: Sequence[int], k: int, n: int | None = None) -> None:
    if len(pattern) != k:
        raise PatternError(f"pattern has {len(pattern)} indices, expected {k}")
    for a, b in zip(pattern, pattern[1:]):
        if a <= b:
            raise PatternError(f"pattern {tuple(pattern)} is not strictly decreasing")
    if k and pattern[-1] < 0:
        raise PatternError(f"pattern {tuple(pattern)} has a negative index")
    if n is not None and k and pattern[0] > n - 1:
        raise PatternError(f"pattern {tuple(pattern)} has an index above {n - 1}")


def rank(pattern: Sequence[int], k: int) -> int:
    """Inverse of the selectors: sum of C(c_i, i) over the pattern."""
    check_pattern(pattern, k)
    return sum(math.comb(c, i) for c, i in zip(pattern, range(k, 0, -1)))


def colex_patterns(n: int, k: int) -> Iterator[IndexPattern]:
    """Yield every k-subset of range(n) as a decreasing tuple, in rank order."""
    if not 0 <= k <= n:
        return
    if k == 0:
        yield ()
        return
    a = list(range(k))  # ascending: a[0] = c_1
    while True:
        yield tuple(reversed(a))
        j = 0
        while j < k - 1 and a[j] + 1 == a[j + 1]:
            j += 1
        if j == k - 1 and a[j] + 1 == n:
            return
        a[j] += 1
        a[:j] = range(j)


class FullLut:
    """Direct table from every p1-bit rank to its pattern."""

    __slots__ = ("n", "k", "p1", "_entries")

    def __init__(self, n: int, k: int, p1: int, entries: tuple[IndexPattern, ...]):
        self.n = n
        self.k = k
        self.p1 = p1
        self._entries = entries

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, x: int) -> IndexPattern:
        if not 0 <= x < len(self._entries):
            raise RankOutOfRange(f"rank {x} outside LUT of {len(self._entries)} entries")
        return self._entries[x]

    def __getitem__(self, x: int) -> IndexPattern:
        return self.lookup(x)


def build_full_lut(n: int, k: int, max_entries: int = DEFAULT_LUT_CAP) -> FullLut:
    """Tabulate the first 2**p1 patterns in rank order.

    Raises :class:`TableCapacityError` when 2**p1 exceeds ``max_entries``.
    """
    if n < 1 or not 1 <= k <= n:
        raise DimensionError(f"need 1 <= k <= n, got n={n}, k={k}")
    p1 = index_bits(n, k)
    size = 1 << p1
    if size > max_entries:
        raise TableCapacityError(
            f"full LUT for n={n}, k={k} needs {size} entries (2**{p1}), cap is {max_entries}"
        )
    gen = colex_patterns(n, k)
    entries = tuple(next(gen) for _ in range(size))
    return FullLut(n, k, p1, entries)
