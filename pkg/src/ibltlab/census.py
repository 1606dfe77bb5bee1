"""Exact census of stopping matrices among column-weight-one binary matrices.

A column-weight-one matrix with ell rows and n columns places each column's
single 1 in one of ell rows, so there are ell**n of them.  A matrix is a
*stopping matrix* when no row has weight exactly 1: peeling cannot start.
``StoppingCensus`` counts stopping matrices exactly for any (ell, n) via a
memoized recurrence on pivots (weight-1 row positions):

    count(ell, n) = ell**n - sum_{c=1..min(ell,n)}
                    c! * C(ell,c) * C(n,c) * count(ell-c, n-c)

Everything is exact integer arithmetic; the recurrence is a difference of
huge terms and would be destroyed by floating point.  Each entry depends
only on entries with the same ell-n difference, so a query fills a single
diagonal iteratively (no deep recursion) and the memo is shared across
queries.
"""

import math
from typing import Iterable, Sequence

from ibltlab.backend import kernels
from ibltlab.errors import ResourceGuardError

BRUTE_FORCE_GUARD = 10_000_000

_CACHE_HEADER = "ibltlab-stopping-census 1"


def is_stopping_matrix(rows: Sequence[Sequence[int]]) -> bool:
    """True iff no row has Hamming weight exactly 1 (any binary matrix)."""
    return all(sum(row) != 1 for row in rows)


def pivots(rows: Sequence[Sequence[int]]) -> set[tuple[int, int]]:
    """Positions (i, j) where entry (i, j) = 1 and row i has weight 1.

    Empty exactly when the matrix is a stopping matrix.
    """
    found = set()
    for i, row in enumerate(rows):
        if sum(row) == 1:
            found.add((i, list(row).index(1)))
    return found


def matrix_from_columns(ell: int, cols: Iterable[int]) -> list[list[int]]:
    """Materialize a column-weight-one matrix from its column row-indices."""
    cols = list(cols)
    rows = [[0] * len(cols) for _ in range(ell)]
    for j, r in enumerate(cols):
        rows[r][j] = 1
    return rows


class StoppingCensus:
    """Memoized exact stopping-matrix counts, arbitrary-precision integers.

    Queries fill the memo lazily and are not synchronized: populate from a
    single thread (count()/fill()), after which the table is effectively
    immutable and safe to share with concurrent readers.
    """

    def __init__(self):
        self._memo: dict[tuple[int, int], int] = {}
        # Per-diagonal fill progress: (ell - n) -> highest column filled.
        self._filled: dict[int, int] = {}

    def count(self, ell: int, n: int) -> int:
        """Number of stopping matrices with ell rows and n weight-one columns."""
        if ell < 0 or n < 0:
            raise ValueError("ell and n must be nonnegative")
        d = ell - n
        if self._filled.get(d, -1) < n:
            self._fill_diagonal(d, n)
        return self._memo[(ell, n)]

    def _fill_diagonal(self, d: int, up_to: int):
        memo = self._memo
        start = self._filled.get(d, max(0, -d) - 1) + 1
        for j in range(start, up_to + 1):
            rows = d + j
            if j == 0:
                memo[(rows, 0)] = 1  # the empty matrix has no weight-1 row
                continue
            if rows == 0:
                memo[(0, j)] = 0
                continue
            removed = 0
            coef = rows * j  # c = 1: 1! * C(rows,1) * C(j,1)
            for c in range(1, min(rows, j) + 1):
                sub = memo[(rows - c, j - c)]
                if sub:
                    removed += coef * sub
                # c! * C(rows,c) * C(j,c) ratio step; the division is exact.
                coef = coef * (rows - c) * (j - c) // (c + 1)
            memo[(rows, j)] = rows**j - removed
        self._filled[d] = max(self._filled.get(d, -1), up_to)

    def log_ratio(self, ell: int, n: int) -> float:
        """ln(count / ell**n): log-probability that a fixed column set stops.

        Returns -inf when the count is zero.  math.log takes the integer
        directly (bit length + leading mantissa), so there is no overflow
        for counts beyond float range.
        """
        if ell < 1 or n < 1:
            raise ValueError("ell and n must be positive")
        c = self.count(ell, n)
        if c == 0:
            return float("-inf")
        return math.log(c) - n * math.log(ell)

    def fill(self, max_ell: int, max_n: int):
        """Precompute the whole rectangle [0, max_ell] x [0, max_n]."""
        for ell in range(max_ell + 1):
            for n in range(max_n + 1):
                self.count(ell, n)

    def known(self) -> dict[tuple[int, int], int]:
        return dict(self._memo)

    def save(self, path):
        """Write every memoized entry as '<ell> <n> <count>' lines."""
        with open(path, "w") as fh:
            fh.write(_CACHE_HEADER + "\n")
            for (ell, n) in sorted(self._memo):
                fh.write(f"{ell} {n} {self._memo[(ell, n)]}\n")

    @classmethod
    def load(cls, path) -> "StoppingCensus":
        census = cls()
        with open(path) as fh:
            header = fh.readline().strip()
            if header != _CACHE_HEADER:
                raise ValueError(f"unrecognized census cache header: {header!r}")
            for line in fh:
                ell_s, n_s, count_s = line.split()
                census._memo[(int(ell_s), int(n_s))] = int(count_s)
        # Recompute per-diagonal progress from contiguous prefixes.
        by_diag: dict[int, set[int]] = {}
        for (ell, n) in census._memo:
            by_diag.setdefault(ell - n, set()).add(n)
        for d, cols in by_diag.items():
            j = max(0, -d)
            while j in cols:
                j += 1
            census._filled[d] = j - 1
        return census


def count_stopping_bruteforce(
    ell: int, n: int, guard: int = BRUTE_FORCE_GUARD
) -> int:
    """Independent oracle: enumerate all ell**n matrices and count stoppers.

    Refuses when ell**n exceeds ``guard``.  Runs on the active kernel
    backend (compiled, or the pure-Python fallback).
    """
    if ell < 0 or n < 0:
        raise ValueError("ell and n must be nonnegative")
    total = ell**n
    if total > guard:
        raise ResourceGuardError(
            f"ell**n = {total} matrices exceeds the guard of {guard}"
        )
    if ell == 0:
        return 1 if n == 0 else 0
    if ell == 1:
        # One possible matrix: all columns in the single row, which is a
        # weight-1 row exactly when n == 1.  Skips an O(n) kernel pass that
        # the ell**n guard does not catch.
        return 0 if n == 1 else 1
    return kernels.count_stopping_matrices(ell, n)
